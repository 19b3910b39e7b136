#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlspec/core/grid.hpp"
#include "nlspec/core/parallel.hpp"
#include "nlspec/linalg/gamma.hpp"

namespace nlspec {

/// rect: two-parameter gamma_{n2,n1} (lower). band / gram: gamma_{n2} (upper).
enum class GammaMode { rect, band, gram };

inline const char* to_string(GammaMode m) {
  switch (m) {
    case GammaMode::rect: return "rect";
    case GammaMode::band: return "band";
    case GammaMode::gram: return "gram";
  }
  return "unknown";
}

inline GammaMode parse_gamma_mode(const std::string& s) {
  if (s == "rect") return GammaMode::rect;
  if (s == "band") return GammaMode::band;
  if (s == "gram") return GammaMode::gram;
  throw Error(ErrorCode::config, "unknown mode '" + s + "' (expected rect, band or gram)");
}

struct GammaSettings {
  GammaMode mode = GammaMode::band;
  int n2 = 16;
  int n1 = 0;                 // rect mode only; 0 picks n2 + band, else 2 n2
  std::optional<double> tol;  // default 1 / (2 n2)

  double effective_tol() const { return tol.value_or(default_tol(n2)); }

  int effective_n1(const PencilOracle& oracle) const {
    if (n1 > 0) return n1;
    if (const auto b = oracle.band()) return n2 + *b;
    return 2 * n2;
  }

  /// Certified modes give gamma_{n2} >= gamma, so acceptance implies inclusion.
  bool certified() const { return mode != GammaMode::rect; }
};

/// Rejects settings the oracle cannot honor, before any computation.
inline void check_settings(const PencilOracle& oracle, const GammaSettings& s) {
  if (s.n2 < 1) throw Error(ErrorCode::config, "n2 must be >= 1");
  if (s.mode == GammaMode::rect && s.n1 < 0) throw Error(ErrorCode::config, "n1 must be >= 1");
  if (s.tol && !(*s.tol > 0.0)) throw Error(ErrorCode::config, "tol must be positive");
  if (s.mode == GammaMode::band && !oracle.band())
    throw Error(ErrorCode::config, "band mode needs a pencil with a declared bandwidth; " + oracle.name() + " has none");
  if (s.mode == GammaMode::gram && oracle.capability() != Capability::lambda2)
    throw Error(ErrorCode::config, "gram mode needs Lambda2 access; " + oracle.name() + " has Lambda1 only");
  if (const auto cap = oracle.max_columns(); cap && s.n2 > *cap)
    throw Error(ErrorCode::config, "n2 = " + std::to_string(s.n2) + " exceeds the pencil capacity " + std::to_string(*cap));
}

inline GammaEstimate evaluate_gamma(const PencilOracle& oracle, Complex z, const GammaSettings& s) {
  switch (s.mode) {
    case GammaMode::rect: return gamma_rect(oracle, z, s.n2, s.effective_n1(oracle), s.effective_tol());
    case GammaMode::band: return gamma_band_exact(oracle, z, s.n2, s.effective_tol());
    case GammaMode::gram: return gamma_gram(oracle, z, s.n2, s.effective_tol());
  }
  throw Error(ErrorCode::invalid_argument, "unknown gamma mode");
}

/// gamma evaluated at every grid point, in grid order.
struct GammaField {
  SamplingGrid grid;
  GammaSettings settings;
  std::vector<GammaEstimate> values;
};

inline GammaField gamma_field(const PencilOracle& oracle, const SamplingGrid& grid, const GammaSettings& settings,
                              const ParallelFor& parallel = sequential_for) {
  check_settings(oracle, settings);
  GammaField field{grid, settings, std::vector<GammaEstimate>(grid.size())};
  parallel(grid.size(), [&](std::size_t k) { field.values[k] = evaluate_gamma(oracle, grid.points[k], settings); });
  return field;
}

}  // namespace nlspec
