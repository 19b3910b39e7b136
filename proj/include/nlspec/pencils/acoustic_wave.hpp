#pragma once

#include <algorithm>
#include <memory>

#include "nlspec/core/pencil.hpp"
#include "nlspec/pencils/polynomials.hpp"

namespace nlspec::pencils {

/// T(z) = d^2/dx^2 + z^2 on L2(0, inf) with the z-dependent boundary
/// condition -p'(0) + i z p(0) = 0.
///
/// Rows: Laguerre functions phi_k = L_k exp(-x/2), k = 0, 1, ...
/// Columns: orthonormalized phi_n + alpha_n(z) phi_0, n = 1, 2, ..., each of
/// which satisfies the boundary condition.
///
/// The adjoint is T(-conj z) with its own boundary condition, so the adjoint
/// matrix uses the basis built at -conj z.
class AcousticWavePencil final : public PencilOracle {
 public:
  explicit AcousticWavePencil(int max_columns) : max_columns_(max_columns) {
    if (max_columns < 1) throw Error(ErrorCode::invalid_argument, "capacity must be >= 1");
  }

  std::string name() const override { return "acoustic_wave"; }
  IndexSpace row_space() const override { return IndexSpace::naturals(); }
  IndexSpace col_space() const override { return IndexSpace::naturals(); }
  DomainRegion domain() const override { return DomainRegion::punctured_plane(kPole, Complex(0.0, -1.0)); }
  std::optional<int> band() const override { return 1; }
  std::optional<int> max_columns() const override { return max_columns_; }

  static constexpr Complex kPole{0.0, 0.5};

  static Complex alpha(Complex z, int n) {
    const Complex i(0.0, 1.0);
    return -(2.0 * i * z + (2.0 * n + 1.0)) / (2.0 * i * z + 1.0);
  }

  /// d^2/dx^2 on span{phi_0..phi_{n-1}}: 1/4 on the diagonal, k - m above it.
  static RealMatrix second_derivative(int n) {
    RealMatrix d = RealMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
      d(k, k) = 0.25;
      for (int m = 0; m < k; ++m) d(m, k) = k - m;
    }
    return d;
  }

  /// Laguerre coefficients ((n+1) x n) of the first n orthonormal basis functions at z.
  static Matrix basis(Complex z, int n) {
    Matrix c = Matrix::Zero(n + 1, n);
    for (int k = 1; k <= n; ++k) {
      c(0, k - 1) = alpha(z, k);
      c(k, k - 1) = 1.0;
    }
    Eigen::HouseholderQR<Matrix> qr(c);
    Matrix q = qr.householderQ() * Matrix::Identity(n + 1, n);
    for (int k = 0; k < n; ++k) {
      const Complex r = qr.matrixQR()(k, k);
      if (std::abs(r) > 0.0) q.col(k) *= r / std::abs(r);
    }
    return q;
  }

  /// (d^2/dx^2 + w^2) applied to Laguerre coefficient columns, in O(rows) per
  /// column via suffix sums of q_k and k q_k.
  static Matrix apply_operator(Complex w, const Matrix& q) {
    const Eigen::Index n = q.rows();
    Matrix out(n, q.cols());
    for (Eigen::Index c = 0; c < q.cols(); ++c) {
      Complex tail(0.0, 0.0);
      Complex weighted(0.0, 0.0);
      for (Eigen::Index m = n - 1; m >= 0; --m) {
        out(m, c) = (0.25 + w * w) * q(m, c) + weighted - static_cast<double>(m) * tail;
        tail += q(m, c);
        weighted += static_cast<double>(m) * q(m, c);
      }
    }
    return out;
  }

  Complex entry(Complex z, int i, int j) const override {
    const int rows[] = {i};
    const int cols[] = {j};
    return block(z, rows, cols, Operand::pencil)(0, 0);
  }

  Complex adjoint_entry(Complex z, int i, int j) const override {
    const int rows[] = {i};
    const int cols[] = {j};
    return block(z, rows, cols, Operand::adjoint)(0, 0);
  }

  Matrix block(Complex z, std::span<const int> rows, std::span<const int> cols, Operand which) const override {
    const Complex w = which == Operand::pencil ? z : -std::conj(z);
    if (w == kPole) throw Error(ErrorCode::point_outside_domain, "basis degenerates at z = i/2");
    const int ncols = *std::max_element(cols.begin(), cols.end());
    if (ncols > max_columns_) throw Error(ErrorCode::window_exceeds_capacity, "acoustic basis capacity exceeded");
    const Matrix q = basis(w, ncols);
    // Column k of q lives in span{phi_0..phi_k}; rows beyond ncols+1 vanish.
    const int span = ncols + 1;
    const Matrix full = apply_operator(w, q);
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t b = 0; b < cols.size(); ++b)
      for (std::size_t a = 0; a < rows.size(); ++a)
        if (rows[a] <= span)
          out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = full(rows[a] - 1, cols[b] - 1);
    return out;
  }

  /// Sampled u(x) = sum_j coeffs_j e_j(x) for the basis at z.
  std::optional<Matrix> evaluate_columns(Complex z, const Vector& coeffs, std::span<const double> mesh) const override {
    const int n = static_cast<int>(coeffs.size());
    const Vector laguerre = basis(z, n) * coeffs;
    const RealVector points = Eigen::Map<const RealVector>(mesh.data(), static_cast<Eigen::Index>(mesh.size()));
    const RealMatrix phi = laguerre_functions(n + 1, points);
    Matrix out(points.size(), 1);
    out.col(0) = phi.cast<Complex>().transpose() * laguerre;
    return out;
  }

  /// -u'(0) + i z u(0) for u with the given Laguerre coefficients; phi_k(0) = 1,
  /// phi_k'(0) = -(k + 1/2).
  static Complex boundary_residual(Complex z, const Vector& laguerre) {
    Complex value(0.0, 0.0);
    Complex slope(0.0, 0.0);
    for (Eigen::Index k = 0; k < laguerre.size(); ++k) {
      value += laguerre(k);
      slope -= (static_cast<double>(k) + 0.5) * laguerre(k);
    }
    return -slope + Complex(0.0, 1.0) * z * value;
  }

 private:
  int max_columns_;
};

inline PencilPtr make_acoustic_wave(int max_columns = 2048) { return std::make_shared<AcousticWavePencil>(max_columns); }

}  // namespace nlspec::pencils
