#pragma once

#include <cmath>
#include <cstdlib>
#include <memory>

#include "nlspec/core/pencil.hpp"

namespace nlspec::pencils {

/// T(z) = H0 - (V - z)^2 on l2(Z): H0 tridiagonal with diagonal 2 and
/// couplings alternating 3/2, 1/2; V_n = -5 exp(-|n|).
class KleinGordonPencil final : public PencilOracle {
 public:
  std::string name() const override { return "klein_gordon"; }
  IndexSpace row_space() const override { return IndexSpace::integers(); }
  IndexSpace col_space() const override { return IndexSpace::integers(); }
  std::optional<int> band() const override { return 1; }

  static double potential(int n) { return -5.0 * std::exp(-static_cast<double>(std::abs(n))); }

  /// (H0)_{n,n+1}.
  static double coupling(int n) { return (n % 2 == 0) ? 1.5 : 0.5; }

  static double free_entry(int i, int j) {
    if (i == j) return 2.0;
    if (i == j + 1) return coupling(j);
    if (j == i + 1) return coupling(i);
    return 0.0;
  }

  Complex entry(Complex z, int i, int j) const override {
    if (i == j) {
      const Complex shift = potential(i) - z;
      return 2.0 - shift * shift;
    }
    return free_entry(i, j);
  }
};

inline PencilPtr make_klein_gordon() { return std::make_shared<KleinGordonPencil>(); }

}  // namespace nlspec::pencils
