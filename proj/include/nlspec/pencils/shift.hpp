#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <utility>

#include "nlspec/core/pencil.hpp"

namespace nlspec::pencils {

using ScalarFunction = std::function<Complex(Complex)>;

/// T(z) = S - f(z) S* on l2(Z), with S e_j = e_{j+1}.
class ShiftPencil final : public PencilOracle {
 public:
  ShiftPencil(ScalarFunction f, std::string label) : f_(std::move(f)), label_(std::move(label)) {}

  std::string name() const override { return "shift[" + label_ + "]"; }
  IndexSpace row_space() const override { return IndexSpace::integers(); }
  IndexSpace col_space() const override { return IndexSpace::integers(); }
  std::optional<int> band() const override { return 1; }

  Complex coefficient(Complex z) const { return f_(z); }

  Complex entry(Complex z, int i, int j) const override {
    if (i == j + 1) return Complex(1.0, 0.0);
    if (i == j - 1) return -f_(z);
    return Complex(0.0, 0.0);
  }

  Matrix block(Complex z, std::span<const int> rows, std::span<const int> cols, Operand which) const override {
    const Complex fz = f_(z);
    // Adjoint: T* = S* - conj(f) S.
    const Complex up = which == Operand::pencil ? Complex(1.0, 0.0) : -std::conj(fz);
    const Complex down = which == Operand::pencil ? -fz : Complex(1.0, 0.0);
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t b = 0; b < cols.size(); ++b) {
      for (std::size_t a = 0; a < rows.size(); ++a) {
        if (rows[a] == cols[b] + 1) out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = up;
        if (rows[a] == cols[b] - 1) out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = down;
      }
    }
    return out;
  }

 private:
  ScalarFunction f_;
  std::string label_;
};

inline PencilPtr make_shift(ScalarFunction f, std::string label = "f") {
  return std::make_shared<ShiftPencil>(std::move(f), std::move(label));
}

/// f(z) = z.
inline Complex shift_identity(Complex z) { return z; }

/// f(z) = sin(4z)(|z|^2 + 1); spectrum is a chain of rings along the real axis.
inline Complex shift_rings(Complex z) { return std::sin(4.0 * z) * (std::norm(z) + 1.0); }

/// gamma(z, T) = ||f(z)| - 1| for the bilateral shift pencil.
inline double shift_gamma_limit(Complex fz) { return std::abs(std::abs(fz) - 1.0); }

/// Exact gamma_{n2} for the symmetric window W(n2): the truncation splits
/// into two path-graph blocks whose smallest singular value is known.
inline double shift_gamma_window(Complex fz, int n2) {
  const double rho = std::abs(fz);
  const double angle = std::acos(-1.0) / (n2 + 2);
  return std::sqrt((1.0 - rho) * (1.0 - rho) + 2.0 * rho * (1.0 - std::cos(angle)));
}

}  // namespace nlspec::pencils
