#pragma once

#include <cmath>
#include <memory>

#include "nlspec/core/pencil.hpp"
#include "nlspec/pencils/polynomials.hpp"

namespace nlspec::pencils {

/// T(z) = z^2 + d^2/dx^2 ([a(x) + z^nu b(x)] d^2/dx^2) on L2(-1, 1), clamped
/// ends, with a = 1 + cos(x)/2 and b = 3/2 + tanh(10x).
///
/// Columns: orthonormalized (x^2 - 1)^2 P_n. Rows: normalized Legendre
/// polynomials. Entries come from quadrature of the strong form
/// z^2 f + c'' f'' + 2 c' f''' + c f'''' with c = a + z^nu b, so
/// T(z) = z^2 P0 + PA + z^nu PB with z-independent real matrices.
///
/// The variable coefficients make the row expansion infinite, so no band is
/// declared. The adjoint is T(conj z) off the branch cut.
class FractionalBeamPencil final : public PencilOracle {
 public:
  struct Options {
    double nu = 1.0;
    int max_columns = 128;
    int max_rows = 0;    // 0: 2 * max_columns + 8
    int quadrature = 0;  // 0: 2 * max_rows + 128
  };

  explicit FractionalBeamPencil(Options opt) : opt_(opt) {
    if (!(opt_.nu > 0.0 && opt_.nu < 2.0)) throw Error(ErrorCode::invalid_argument, "nu must lie in (0, 2)");
    if (opt_.max_columns < 1) throw Error(ErrorCode::invalid_argument, "capacity must be >= 1");
    if (opt_.max_rows <= 0) opt_.max_rows = 2 * opt_.max_columns + 8;
    if (opt_.quadrature <= 0) opt_.quadrature = 2 * opt_.max_rows + 128;
    build();
  }

  static double a(double x) { return 1.0 + std::cos(x) / 2.0; }
  static double a1(double x) { return -std::sin(x) / 2.0; }
  static double a2(double x) { return -std::cos(x) / 2.0; }
  static double b(double x) { return 1.5 + std::tanh(10.0 * x); }
  static double b1(double x) {
    const double s = 1.0 / std::cosh(10.0 * x);
    return 10.0 * s * s;
  }
  static double b2(double x) {
    const double s = 1.0 / std::cosh(10.0 * x);
    return -200.0 * s * s * std::tanh(10.0 * x);
  }

  std::string name() const override { return "fractional_beam"; }
  IndexSpace row_space() const override { return IndexSpace::naturals(); }
  IndexSpace col_space() const override { return IndexSpace::naturals(); }
  DomainRegion domain() const override { return DomainRegion::slit_plane(0.0, Complex(1.0, 0.0)); }
  std::optional<int> max_columns() const override { return opt_.max_columns; }
  double nu() const { return opt_.nu; }

  /// Legendre coefficients of the orthonormal column basis.
  const RealMatrix& basis() const { return basis_; }

  Complex entry(Complex z, int i, int j) const override {
    check(i, j);
    return value(z, i - 1, j - 1);
  }

  Complex adjoint_entry(Complex z, int i, int j) const override {
    check(i, j);
    return value(std::conj(z), i - 1, j - 1);
  }

  Matrix block(Complex z, std::span<const int> rows, std::span<const int> cols, Operand which) const override {
    const Complex w = which == Operand::pencil ? z : std::conj(z);
    const Complex z2 = w * w;
    const Complex znu = std::pow(w, opt_.nu);
    Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      for (std::size_t r = 0; r < rows.size(); ++r) {
        check(rows[r], cols[c]);
        const Eigen::Index i = rows[r] - 1;
        const Eigen::Index j = cols[c] - 1;
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = z2 * mass_(i, j) + stiff_a_(i, j) + znu * stiff_b_(i, j);
      }
    }
    return out;
  }

  std::optional<Matrix> evaluate_columns(Complex z, const Vector& coeffs, std::span<const double> mesh) const override {
    (void)z;
    const auto n = coeffs.size();
    const RealVector points = Eigen::Map<const RealVector>(mesh.data(), static_cast<Eigen::Index>(mesh.size()));
    const auto table = legendre_table(static_cast<int>(n) + 4, 0, points);
    const Vector legendre = basis_.topLeftCorner(n + 4, n).cast<Complex>() * coeffs;
    Matrix out(points.size(), 1);
    out.col(0) = table[0].cast<Complex>().transpose() * legendre;
    return out;
  }

 private:
  void check(int i, int j) const {
    if (j < 1 || j > opt_.max_columns || i < 1 || i > opt_.max_rows)
      throw Error(ErrorCode::window_exceeds_capacity,
                  "beam index (" + std::to_string(i) + "," + std::to_string(j) + ") outside the precomputed window");
  }

  Complex value(Complex z, Eigen::Index i, Eigen::Index j) const {
    return z * z * mass_(i, j) + stiff_a_(i, j) + std::pow(z, opt_.nu) * stiff_b_(i, j);
  }

  void build() {
    const int n = opt_.max_columns;
    basis_ = orthonormal_columns(bubble_coefficients(n, 2));
    const Quadrature q = gauss_legendre(opt_.quadrature);
    const int poly = std::max(n + 4, opt_.max_rows);
    const auto table = legendre_table(poly, 4, q.nodes);
    auto values = [&](int order) -> RealMatrix {
      return table[static_cast<std::size_t>(order)].topRows(n + 4).transpose() * basis_;
    };
    const RealMatrix f0 = values(0);
    const RealMatrix f2 = values(2);
    const RealMatrix f3 = values(3);
    const RealMatrix f4 = values(4);
    const Eigen::Index k = q.nodes.size();
    RealVector va(k), va1(k), va2(k), vb(k), vb1(k), vb2(k);
    for (Eigen::Index t = 0; t < k; ++t) {
      const double x = q.nodes(t);
      va(t) = a(x), va1(t) = a1(x), va2(t) = a2(x);
      vb(t) = b(x), vb1(t) = b1(x), vb2(t) = b2(x);
    }
    const RealMatrix rows = table[0].topRows(opt_.max_rows) * q.weights.asDiagonal();
    mass_ = rows * f0;
    stiff_a_ = rows * (va2.asDiagonal() * f2 + 2.0 * (va1.asDiagonal() * f3) + va.asDiagonal() * f4);
    stiff_b_ = rows * (vb2.asDiagonal() * f2 + 2.0 * (vb1.asDiagonal() * f3) + vb.asDiagonal() * f4);
  }

  Options opt_;
  RealMatrix basis_;
  RealMatrix mass_;
  RealMatrix stiff_a_;
  RealMatrix stiff_b_;
};

inline PencilPtr make_fractional_beam(double nu, int max_columns = 128) {
  FractionalBeamPencil::Options opt;
  opt.nu = nu;
  opt.max_columns = max_columns;
  return std::make_shared<FractionalBeamPencil>(opt);
}

}  // namespace nlspec::pencils
