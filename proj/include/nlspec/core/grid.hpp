#pragma once

#include <cmath>
#include <vector>

#include "nlspec/core/domain.hpp"

namespace nlspec {

/// Axis-aligned rectangle [xmin, xmax] x [ymin, ymax] in the complex plane.
struct Rect {
  double xmin = 0.0;
  double xmax = 0.0;
  double ymin = 0.0;
  double ymax = 0.0;

  bool has_area() const { return xmax > xmin && ymax > ymin; }
  bool contains(Complex z) const {
    return z.real() >= xmin && z.real() <= xmax && z.imag() >= ymin && z.imag() <= ymax;
  }
};

/// Finite set G_n of dyadic-rational points inside U.
struct SamplingGrid {
  int level = 1;
  double pitch = 1.0;
  DomainRegion region = DomainRegion::whole_plane();
  std::vector<Complex> points;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
};

namespace detail {

inline bool is_power_of_two(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) return false;
  int exponent = 0;
  const double mantissa = std::frexp(h, &exponent);
  return mantissa == 0.5;
}

}  // namespace detail

/// Dyadic lattice of pitch initial_pitch * 2^-ceil(log2 n) anchored at 0,
/// clipped to bbox and U, listed row-major (imaginary part outer, real part
/// inner, both ascending). An empty result is a valid grid.
inline SamplingGrid grid_generate(const DomainRegion& region, const Rect& bbox, int n,
                                  double initial_pitch = 1.0) {
  if (!bbox.has_area()) throw Error(ErrorCode::invalid_argument, "bounding box has no area");
  if (n < 1) throw Error(ErrorCode::invalid_argument, "grid level must be >= 1");
  if (!detail::is_power_of_two(initial_pitch))
    throw Error(ErrorCode::invalid_argument, "initial pitch must be a power of two");

  int refinements = 0;
  while ((1 << refinements) < n) ++refinements;
  const double pitch = std::ldexp(initial_pitch, -refinements);

  SamplingGrid grid;
  grid.level = n;
  grid.pitch = pitch;
  grid.region = region;

  const auto kx0 = static_cast<long long>(std::ceil(bbox.xmin / pitch));
  const auto kx1 = static_cast<long long>(std::floor(bbox.xmax / pitch));
  const auto ky0 = static_cast<long long>(std::ceil(bbox.ymin / pitch));
  const auto ky1 = static_cast<long long>(std::floor(bbox.ymax / pitch));
  for (long long ky = ky0; ky <= ky1; ++ky) {
    for (long long kx = kx0; kx <= kx1; ++kx) {
      const Complex z(static_cast<double>(kx) * pitch, static_cast<double>(ky) * pitch);
      if (region.contains(z)) grid.points.push_back(z);
    }
  }
  return grid;
}

}  // namespace nlspec
