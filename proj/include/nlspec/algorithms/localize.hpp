#pragma once

#include <array>
#include <limits>
#include <vector>

#include "nlspec/algorithms/gamma_field.hpp"

namespace nlspec {

struct LocalizeOptions {
  GammaSettings settings;           // n2 is overridden by the schedule
  std::vector<int> n2_schedule{16};
  double radius = 0.1;              // initial stencil pitch at every n2
  double shrink = 0.5;
  double accuracy = 1e-10;          // stop once the pitch drops below this
  int max_steps = 400;              // stencil evaluations per n2
};

struct LocalizeLevel {
  int n2 = 0;
  Complex z;
  double gamma = 0.0;  // computed gamma_{n2} at z, before any one-sided shift
  double pitch = 0.0;
  int steps = 0;
  bool budget_exhausted = false;
};

struct LocalizeResult {
  Complex z;
  std::vector<LocalizeLevel> history;
  std::vector<Complex> path;
  bool budget_exhausted = false;
};

/// Derivative-free 9-point pattern search for local minima of gamma_{n2}(., T),
/// repeated along the n2 schedule from the previous minimizer.
inline LocalizeResult localize_eigenvalue(const PencilOracle& oracle, Complex seed, const LocalizeOptions& opt) {
  const DomainRegion region = oracle.domain();
  if (!region.contains(seed)) throw Error(ErrorCode::point_outside_domain, format_complex(seed) + " is outside U");
  if (opt.n2_schedule.empty()) throw Error(ErrorCode::invalid_argument, "empty n2 schedule");
  if (!(opt.radius > 0.0) || !(opt.shrink > 0.0 && opt.shrink < 1.0) || !(opt.accuracy > 0.0))
    throw Error(ErrorCode::invalid_argument, "radius, shrink and accuracy must be in range");

  LocalizeResult result;
  result.z = seed;
  result.path.push_back(seed);
  for (const int n2 : opt.n2_schedule) {
    GammaSettings s = opt.settings;
    s.n2 = n2;
    check_settings(oracle, s);
    auto gamma_at = [&](Complex z) {
      return region.contains(z) ? evaluate_gamma(oracle, z, s).center : std::numeric_limits<double>::infinity();
    };
    LocalizeLevel level;
    level.n2 = n2;
    Complex z = result.z;
    double best = gamma_at(z);
    double pitch = opt.radius;
    int steps = 0;
    while (pitch >= opt.accuracy) {
      if (steps >= opt.max_steps) {
        level.budget_exhausted = true;
        break;
      }
      ++steps;
      Complex next = z;
      double next_gamma = best;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const Complex w = z + pitch * Complex(dx, dy);
          const double g = gamma_at(w);
          if (g < next_gamma) {
            next_gamma = g;
            next = w;
          }
        }
      }
      if (next == z) {
        pitch *= opt.shrink;
      } else {
        z = next;
        best = next_gamma;
        result.path.push_back(z);
      }
    }
    level.z = z;
    level.gamma = best;
    level.pitch = pitch;
    level.steps = steps;
    result.z = z;
    result.budget_exhausted = result.budget_exhausted || level.budget_exhausted;
    result.history.push_back(level);
  }
  return result;
}

}  // namespace nlspec
