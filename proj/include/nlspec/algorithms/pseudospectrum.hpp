#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "nlspec/algorithms/gamma_field.hpp"

namespace nlspec {

/// Finite approximation of a relatively closed subset of U; may be empty.
struct ClosedSetApprox {
  std::vector<Complex> points;
  std::vector<GammaEstimate> gammas;
  int level = 1;
  std::optional<double> epsilon;  // unset for spectrum output
  bool certified = false;

  bool empty() const { return points.empty(); }
};

/// The acceptance test gamma + 1/level <= epsilon, with level the grid level.
inline bool accepts(const GammaEstimate& g, int level, double epsilon) {
  return g.value + 1.0 / level <= epsilon;
}

inline ClosedSetApprox pseudospectrum(const GammaField& field, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::invalid_argument, "epsilon must be positive");
  ClosedSetApprox out;
  out.level = field.grid.level;
  out.epsilon = epsilon;
  out.certified = field.settings.certified();
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    if (!accepts(field.values[k], field.grid.level, epsilon)) continue;
    out.points.push_back(field.grid.points[k]);
    out.gammas.push_back(field.values[k]);
  }
  return out;
}

inline ClosedSetApprox pseudospectrum(const PencilOracle& oracle, const SamplingGrid& grid, double epsilon,
                                      const GammaSettings& settings, const ParallelFor& parallel = sequential_for) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::invalid_argument, "epsilon must be positive");
  return pseudospectrum(gamma_field(oracle, grid, settings, parallel), epsilon);
}

/// Spectrum approximation: the pseudospectrum at epsilon = 1/n3.
inline ClosedSetApprox spectrum(const GammaField& field, int n3) {
  if (n3 < 1) throw Error(ErrorCode::invalid_argument, "n3 must be >= 1");
  ClosedSetApprox out = pseudospectrum(field, 1.0 / n3);
  out.epsilon.reset();
  return out;
}

inline ClosedSetApprox spectrum(const PencilOracle& oracle, const SamplingGrid& grid, int n3,
                                const GammaSettings& settings, const ParallelFor& parallel = sequential_for) {
  if (n3 < 1) throw Error(ErrorCode::invalid_argument, "n3 must be >= 1");
  return spectrum(gamma_field(oracle, grid, settings, parallel), n3);
}

}  // namespace nlspec
