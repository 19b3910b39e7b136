#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "nlspec/algorithms/localize.hpp"
#include "nlspec/algorithms/pseudoeigenfunction.hpp"
#include "nlspec/algorithms/pseudospectrum.hpp"
#include "nlspec/io/results.hpp"
#include "nlspec/io/run_config.hpp"

namespace nlspec::io {

/// Column capacity needed by a run, so function-space pencils precompute
/// enough basis functions and rows (rows are about twice the columns).
inline int capacity_hint(const RunConfig& c) {
  int hint = c.largest_n2();
  if (c.mode == GammaMode::rect) {
    const int rows = c.n1_auto ? c.effective_n1_max() : c.n1;
    hint = std::max(hint, (rows + 1) / 2);
  }
  return hint;
}

inline PencilPtr build_pencil(const RunConfig& c) { return pencils::make_pencil(c.pencil, capacity_hint(c)); }

/// Outcome of the n1-doubling loop at one point.
struct InnerLimit {
  GammaEstimate gamma;
  int n1 = 0;
  bool stagnated = false;
};

/// Heuristic stand-in for the inner limit n1 -> inf of gamma_{n2,n1}: double
/// n1 until the value changes by less than rel_change (relative) over two
/// consecutive doublings, or n1 would exceed n1_max.
inline InnerLimit gamma_rect_doubling(const PencilOracle& oracle, Complex z, const GammaSettings& s, int n1_max,
                                      double rel_change = 1e-8) {
  InnerLimit out;
  int n1 = s.effective_n1(oracle);
  std::vector<double> history;
  for (;;) {
    out.gamma = gamma_rect(oracle, z, s.n2, n1, s.effective_tol());
    out.n1 = n1;
    history.push_back(out.gamma.center);
    const std::size_t k = history.size();
    if (k >= 3) {
      const double scale = std::max(std::abs(history[k - 1]), std::numeric_limits<double>::min());
      if (std::abs(history[k - 1] - history[k - 2]) <= rel_change * scale &&
          std::abs(history[k - 2] - history[k - 3]) <= rel_change * scale) {
        out.stagnated = true;
        return out;
      }
    }
    if (2 * n1 > n1_max) return out;
    n1 *= 2;
  }
}

struct FieldRun {
  FieldFile file;
  std::size_t unstagnated = 0;  // points where the n1 loop hit n1_max
};

inline std::vector<GammaRecord> field_records(const PencilOracle& oracle, const SamplingGrid& grid,
                                              const RunConfig& c, const ParallelFor& parallel,
                                              std::size_t& unstagnated) {
  const GammaSettings s = c.gamma_settings();
  check_settings(oracle, s);
  unstagnated = 0;
  if (!c.n1_auto) return make_records(gamma_field(oracle, grid, s, parallel), oracle);
  std::vector<InnerLimit> limits(grid.size());
  parallel(grid.size(), [&](std::size_t k) {
    limits[k] = gamma_rect_doubling(oracle, grid.points[k], s, c.effective_n1_max());
  });
  std::vector<GammaRecord> out;
  out.reserve(limits.size());
  for (std::size_t k = 0; k < limits.size(); ++k) {
    out.push_back({grid.points[k], limits[k].gamma, s.n2, limits[k].n1, s.mode});
    if (!limits[k].stagnated) ++unstagnated;
  }
  return out;
}

inline SamplingGrid run_grid(const PencilOracle& oracle, const RunConfig& c) {
  return grid_generate(oracle.domain(), c.bbox, c.effective_grid_level(), c.initial_pitch);
}

inline FieldRun run_gamma_field(const RunConfig& c, const ParallelFor& parallel) {
  const auto oracle = build_pencil(c);
  const auto grid = run_grid(*oracle, c);
  FieldRun run;
  run.file.header = make_header("gamma-field", c);
  run.file.records = field_records(*oracle, grid, c, parallel, run.unstagnated);
  return run;
}

inline FieldRun run_pseudospectrum(const RunConfig& c, const ParallelFor& parallel) {
  const auto oracle = build_pencil(c);
  const auto grid = run_grid(*oracle, c);
  FieldRun run;
  auto records = field_records(*oracle, grid, c, parallel, run.unstagnated);
  run.file = make_set_file(make_header("pseudospectrum", c), std::move(records), c.epsilons, grid.level);
  return run;
}

inline FieldRun run_spectrum(const RunConfig& c, const ParallelFor& parallel) {
  const auto oracle = build_pencil(c);
  const auto grid = run_grid(*oracle, c);
  FieldRun run;
  auto records = field_records(*oracle, grid, c, parallel, run.unstagnated);
  run.file = make_set_file(make_header("spectrum", c), std::move(records), {1.0 / c.n3}, grid.level);
  return run;
}

inline LocalizeOptions localize_options(const RunConfig& c) {
  LocalizeOptions opt;
  opt.settings = c.gamma_settings();
  opt.n2_schedule = c.n2_schedule.empty() ? std::vector<int>{c.n2} : c.n2_schedule;
  opt.radius = c.radius;
  opt.shrink = c.shrink;
  opt.accuracy = c.accuracy;
  opt.max_steps = c.max_steps;
  return opt;
}

inline LocalizeFile run_localize(const RunConfig& c) {
  const auto oracle = build_pencil(c);
  if (!oracle->domain().contains(c.seed))
    throw Error(ErrorCode::config, "seed " + format_complex(c.seed) + " lies outside " + oracle->domain().description());
  const auto result = localize_eigenvalue(*oracle, c.seed, localize_options(c));
  LocalizeFile f;
  f.header = make_header("localize", c);
  f.header["budget_exhausted"] = result.budget_exhausted;
  f.path = result.path;
  f.levels = result.history;
  return f;
}

inline PseudofunFile run_pseudofun(const RunConfig& c) {
  const auto oracle = build_pencil(c);
  if (!oracle->domain().contains(c.z))
    throw Error(ErrorCode::config, "z " + format_complex(c.z) + " lies outside " + oracle->domain().description());
  const auto pf = pseudoeigenfunction(*oracle, c.z, c.gamma_settings());
  PseudofunFile f;
  f.header = make_header("pseudofun", c);
  f.z = c.z;
  f.residual = pf.residual;
  f.degenerate = pf.degenerate;
  f.estimate = pf.estimate;
  f.coefficients.assign(pf.coefficients.data(), pf.coefficients.data() + pf.coefficients.size());
  f.mesh = c.mesh.points();
  if (const auto values = oracle->evaluate_columns(c.z, pf.coefficients, f.mesh)) {
    for (Eigen::Index col = 0; col < values->cols(); ++col) {
      std::vector<Complex> v(static_cast<std::size_t>(values->rows()));
      for (Eigen::Index k = 0; k < values->rows(); ++k) v[static_cast<std::size_t>(k)] = (*values)(k, col);
      f.values.push_back(std::move(v));
    }
  } else {
    f.mesh.clear();
  }
  return f;
}

}  // namespace nlspec::io
