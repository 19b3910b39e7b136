#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "nlspec/core/types.hpp"

namespace nlspec {

enum class RegionShape { whole_plane, punctured_plane, open_disk, slit_plane };

/// The open set U on which a pencil is defined.
///
/// boundary_dist(z) is dist(z, dU) for z in U, +inf when U = C, and 0 for
/// z outside U, so boundary_dist(z) > 0 exactly when contains(z).
class DomainRegion {
 public:
  static DomainRegion whole_plane() {
    return DomainRegion(RegionShape::whole_plane, {}, 0.0, Complex(0.0, 0.0), "C");
  }

  static DomainRegion punctured_plane(Complex hole, Complex base_point) {
    if (hole == base_point)
      throw Error(ErrorCode::invalid_argument, "base point coincides with the puncture");
    return DomainRegion(RegionShape::punctured_plane, hole, 0.0, base_point,
                        "C \\ {" + format_complex(hole) + "}");
  }

  static DomainRegion open_disk(Complex center, double radius) {
    if (!(radius > 0.0)) throw Error(ErrorCode::invalid_argument, "disk radius must be positive");
    return DomainRegion(RegionShape::open_disk, center, radius, center,
                        "disk(" + format_complex(center) + ", " + std::to_string(radius) + ")");
  }

  /// C with the ray (-inf, tip] removed; principal-branch powers live here.
  static DomainRegion slit_plane(double tip, Complex base_point) {
    auto region = DomainRegion(RegionShape::slit_plane, Complex(tip, 0.0), 0.0, base_point,
                               "C \\ (-inf, " + std::to_string(tip) + "]");
    if (!region.contains(base_point))
      throw Error(ErrorCode::invalid_argument, "base point lies on the slit");
    return region;
  }

  RegionShape shape() const { return shape_; }
  Complex base_point() const { return base_; }
  const std::string& description() const { return description_; }

  double boundary_dist(Complex z) const {
    switch (shape_) {
      case RegionShape::whole_plane:
        return std::numeric_limits<double>::infinity();
      case RegionShape::punctured_plane:
        return std::abs(z - anchor_);
      case RegionShape::open_disk:
        return std::max(0.0, radius_ - std::abs(z - anchor_));
      case RegionShape::slit_plane: {
        const Complex w = z - anchor_;
        return w.real() > 0.0 ? std::abs(w) : std::abs(w.imag());
      }
    }
    return 0.0;
  }

  bool contains(Complex z) const {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return boundary_dist(z) > 0.0;
  }

  bool is_whole_plane() const { return shape_ == RegionShape::whole_plane; }

  /// Conformal weight 1 / min{1, dist(z, dU)} of the boundary-adapted metric.
  double metric_weight(Complex z) const {
    const double d = boundary_dist(z);
    return 1.0 / std::min(1.0, d);
  }

 private:
  DomainRegion(RegionShape shape, Complex anchor, double radius, Complex base, std::string description)
      : shape_(shape), anchor_(anchor), radius_(radius), base_(base), description_(std::move(description)) {}

  RegionShape shape_;
  Complex anchor_;
  double radius_;
  Complex base_;
  std::string description_;
};

}  // namespace nlspec
