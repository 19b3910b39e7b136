#pragma once

#include <string>

#include "nlspec/pencils/acoustic_wave.hpp"
#include "nlspec/pencils/fractional_beam.hpp"
#include "nlspec/pencils/klein_gordon.hpp"
#include "nlspec/pencils/predator_prey.hpp"
#include "nlspec/pencils/shift.hpp"

namespace nlspec::pencils {

/// Built-in pencil selection with its parameters. Fields that do not apply to
/// the chosen pencil are ignored.
struct PencilSpec {
  std::string name = "shift";    // shift | klein_gordon | acoustic_wave | fractional_beam | predator_prey
  std::string shift_f = "identity";  // identity | rings
  double nu = 1.0;
  double r2 = 0.5;
  int capacity = 0;  // column capacity for function-space pencils; 0 = derived from n2
};

inline bool is_known_pencil(const std::string& name) {
  return name == "shift" || name == "klein_gordon" || name == "acoustic_wave" || name == "fractional_beam" ||
         name == "predator_prey";
}

inline ScalarFunction shift_function(const std::string& label) {
  if (label == "identity") return shift_identity;
  if (label == "rings") return shift_rings;
  throw Error(ErrorCode::config, "unknown shift function '" + label + "' (expected identity or rings)");
}

/// Constructs the oracle; capacity_hint is the largest column window the
/// caller intends to request.
inline PencilPtr make_pencil(const PencilSpec& spec, int capacity_hint) {
  const int capacity = spec.capacity > 0 ? spec.capacity : std::max(capacity_hint, 1);
  if (spec.name == "shift") return make_shift(shift_function(spec.shift_f), spec.shift_f);
  if (spec.name == "klein_gordon") return make_klein_gordon();
  if (spec.name == "acoustic_wave") return make_acoustic_wave(capacity);
  if (spec.name == "fractional_beam") {
    if (!(spec.nu > 0.0 && spec.nu < 2.0)) throw Error(ErrorCode::config, "nu must lie in (0, 2)");
    return make_fractional_beam(spec.nu, capacity);
  }
  if (spec.name == "predator_prey") return make_predator_prey(spec.r2, std::max(capacity, 2));
  throw Error(ErrorCode::config, "unknown pencil '" + spec.name + "'");
}

}  // namespace nlspec::pencils
