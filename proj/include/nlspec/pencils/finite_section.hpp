#pragma once

#include <cmath>
#include <vector>

#include <lapacke.h>

#include "nlspec/linalg/singular_values.hpp"
#include "nlspec/pencils/klein_gordon.hpp"

namespace nlspec::pencils {

struct FiniteSectionResult {
  std::vector<Complex> eigenvalues;
  /// Set when the square truncation is singular for every z, so it has no
  /// eigenvalue list at all.
  bool singular_for_all_z = false;
};

/// Finite eigenvalues of P(z) = sum_k z^k coefficients[k] through the block
/// companion pencil. Infinite eigenvalues (singular leading coefficient) are
/// dropped.
inline std::vector<Complex> polynomial_eigenvalues(const std::vector<Matrix>& coefficients) {
  if (coefficients.size() < 2) throw Error(ErrorCode::invalid_argument, "need a matrix polynomial of degree >= 1");
  const Eigen::Index n = coefficients.front().rows();
  for (const auto& c : coefficients)
    if (c.rows() != n || c.cols() != n) throw Error(ErrorCode::invalid_argument, "coefficients must be square and equal-sized");
  const auto degree = static_cast<Eigen::Index>(coefficients.size() - 1);
  const Eigen::Index size = n * degree;

  // A v = z B v with v = (x, z x, ..., z^{d-1} x).
  Matrix a = Matrix::Zero(size, size);
  Matrix b = Matrix::Identity(size, size);
  for (Eigen::Index k = 0; k + 1 < degree; ++k) a.block(k * n, (k + 1) * n, n, n).setIdentity();
  for (Eigen::Index k = 0; k < degree; ++k)
    a.block((degree - 1) * n, k * n, n, n) = -coefficients[static_cast<std::size_t>(k)];
  b.block((degree - 1) * n, (degree - 1) * n, n, n) = coefficients.back();

  std::vector<Complex> alpha(static_cast<std::size_t>(size));
  std::vector<Complex> beta(static_cast<std::size_t>(size));
  const auto m = static_cast<lapack_int>(size);
  const lapack_int info =
      LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'N', m, linalg::detail::lapack_ptr(a.data()), m,
                    linalg::detail::lapack_ptr(b.data()), m, linalg::detail::lapack_ptr(alpha.data()),
                    linalg::detail::lapack_ptr(beta.data()), nullptr, 1, nullptr, 1);
  linalg::detail::check_info(info, "zggev");

  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  std::vector<Complex> out;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (std::abs(beta[k]) <= 1e-13 * scale * std::max(1.0, std::abs(alpha[k]))) continue;
    out.push_back(alpha[k] / beta[k]);
  }
  return out;
}

/// Square truncation of H0 - (V - z)^2 to W(n), as the quadratic problem
/// (K + 2 z V - z^2 I) x = 0 with K = H0 - V^2.
inline FiniteSectionResult klein_gordon_finite_section(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "window must be >= 1");
  const auto idx = IndexSpace::integers().window(n);
  const auto size = static_cast<Eigen::Index>(idx.size());
  Matrix k0 = Matrix::Zero(size, size);
  Matrix k1 = Matrix::Zero(size, size);
  for (Eigen::Index a = 0; a < size; ++a) {
    const double v = KleinGordonPencil::potential(idx[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < size; ++b)
      k0(a, b) = KleinGordonPencil::free_entry(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    k0(a, a) -= v * v;
    k1(a, a) = 2.0 * v;
  }
  const Matrix k2 = -Matrix::Identity(size, size);
  return {polynomial_eigenvalues({k0, k1, k2}), false};
}

/// Square dim x dim truncation of S - f(z) S* with (Tu)_k = u_{k-1} - f u_{k+1}.
inline Matrix shift_square_truncation(Complex fz, int dim) {
  Matrix t = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    if (k >= 1) t(k, k - 1) = 1.0;
    if (k + 1 < dim) t(k, k + 1) = -fz;
  }
  return t;
}

/// Kernel vector of the (2n+1)-dimensional truncation, valid for every f:
/// (f^n, 0, f^{n-1}, 0, ..., f, 0, 1).
inline Vector shift_odd_null_vector(Complex fz, int n) {
  Vector u = Vector::Zero(2 * n + 1);
  for (int k = 0; k <= n; ++k) u(2 * k) = std::pow(fz, n - k);
  return u;
}

/// Square truncations of the shift pencil with polynomial f (coefficients in
/// ascending degree). Odd dimensions are singular for every z.
inline FiniteSectionResult shift_finite_section(const std::vector<Complex>& poly, int dim) {
  if (dim < 1) throw Error(ErrorCode::invalid_argument, "dimension must be >= 1");
  if (poly.empty()) throw Error(ErrorCode::unsupported, "f must be a nonzero polynomial");
  if (dim % 2 == 1) return {{}, true};
  std::vector<Matrix> coefficients;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    Matrix c = shift_square_truncation(poly[k], dim);
    // Only the -f S* part carries z; strip the S part from higher degrees.
    if (k > 0)
      for (int r = 1; r < dim; ++r) c(r, r - 1) = 0.0;
    coefficients.push_back(c);
  }
  while (coefficients.size() > 2 && coefficients.back().isZero(0.0)) coefficients.pop_back();
  return {polynomial_eigenvalues(coefficients), false};
}

}  // namespace nlspec::pencils
