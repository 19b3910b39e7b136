#pragma once

#include <cmath>
#include <memory>
#include <numbers>

#include "nlspec/core/pencil.hpp"
#include "nlspec/pencils/polynomials.hpp"

namespace nlspec::pencils {

struct PredatorPreyParams {
  double d1 = 0.15;
  double d2 = 0.5;
  double tau = 0.1;
  double delay = std::numbers::sqrt2;  // prey equation delay r
  double r1 = 1.0;
  double r2 = 0.5;
};

/// Steady state (u*, v*) at Chebyshev-Gauss-Lobatto nodes x_k = cos(pi k / M)
/// (x_0 = 1, x_M = -1).
struct SteadyState {
  RealVector nodes;
  RealVector u;
  RealVector v;
  int iterations = 0;
  double residual = 0.0;
};

/// Residual sup-norm of the collocated steady-state system
/// d1 u'' + u (r1 - v) = 0, d2 v'' + v (u - r2) = 0, with boundary rows
/// u(-1) = 2, u(1) = 0, v(-1) = 1, v(1) = 0.
inline double steady_state_residual(const PredatorPreyParams& p, const RealMatrix& d2, const RealVector& u,
                                    const RealVector& v) {
  const Eigen::Index m = u.size() - 1;
  RealVector fu = p.d1 * (d2 * u) + u.cwiseProduct((p.r1 - v.array()).matrix());
  RealVector fv = p.d2 * (d2 * v) + v.cwiseProduct((u.array() - p.r2).matrix());
  fu(0) = u(0);
  fu(m) = u(m) - 2.0;
  fv(0) = v(0);
  fv(m) = v(m) - 1.0;
  return std::max(fu.cwiseAbs().maxCoeff(), fv.cwiseAbs().maxCoeff());
}

/// Newton iteration on the collocation system from the affine interpolant of
/// the boundary data. Stops when the residual drops below tol or the step
/// reaches rounding level (the residual floor grows like M^4 u). Throws
/// steady_state_divergence after max_iterations.
inline SteadyState solve_steady_state(const PredatorPreyParams& p, int m, double tol = 1e-10, int max_iterations = 50) {
  if (m < 16) throw Error(ErrorCode::invalid_argument, "collocation size must be >= 16");
  const ChebyshevGrid grid = chebyshev_grid(m);
  const RealMatrix d2 = grid.diff * grid.diff;
  const Eigen::Index n = m + 1;
  SteadyState s;
  s.nodes = grid.nodes;
  s.u = (1.0 - grid.nodes.array()).matrix();
  s.v = ((1.0 - grid.nodes.array()) / 2.0).matrix();

  for (int it = 0; it <= max_iterations; ++it) {
    s.residual = steady_state_residual(p, d2, s.u, s.v);
    s.iterations = it;
    if (s.residual < tol) return s;
    if (it == max_iterations) break;

    RealVector f(2 * n);
    f.head(n) = p.d1 * (d2 * s.u) + s.u.cwiseProduct((p.r1 - s.v.array()).matrix());
    f.tail(n) = p.d2 * (d2 * s.v) + s.v.cwiseProduct((s.u.array() - p.r2).matrix());
    RealMatrix jac = RealMatrix::Zero(2 * n, 2 * n);
    jac.topLeftCorner(n, n) = p.d1 * d2;
    jac.topLeftCorner(n, n).diagonal() += (p.r1 - s.v.array()).matrix();
    jac.topRightCorner(n, n).diagonal() = -s.u;
    jac.bottomLeftCorner(n, n).diagonal() = s.v;
    jac.bottomRightCorner(n, n) = p.d2 * d2;
    jac.bottomRightCorner(n, n).diagonal() += (s.u.array() - p.r2).matrix();
    const struct {
      Eigen::Index row;
      double value;
    } boundary[] = {{0, s.u(0)}, {m, s.u(m) - 2.0}, {n, s.v(0)}, {n + m, s.v(m) - 1.0}};
    for (const auto& bc : boundary) {
      jac.row(bc.row).setZero();
      jac(bc.row, bc.row) = 1.0;
      f(bc.row) = bc.value;
    }
    const RealVector step = jac.partialPivLu().solve(-f);
    if (!step.allFinite()) break;
    s.u += step.head(n);
    s.v += step.tail(n);
    const double scale = 1.0 + std::max(s.u.cwiseAbs().maxCoeff(), s.v.cwiseAbs().maxCoeff());
    if (it >= 2 && step.cwiseAbs().maxCoeff() <= 1e-13 * scale) {
      s.residual = steady_state_residual(p, d2, s.u, s.v);
      s.iterations = it + 1;
      return s;
    }
  }
  throw Error(ErrorCode::steady_state_divergence,
              "Newton did not converge; last residual " + std::to_string(s.residual));
}

/// Linearization of the delayed predator-prey system about (u*, v*):
///
///   [ z - d1 tau D2 - tau r1 + tau v*     e^{-r z} tau u*               ]
///   [ -e^{-z} tau v*                      z - d2 tau D2 + tau r2 - tau u* ]
///
/// with Dirichlet conditions, on L2 x L2 over (-1, 1). Columns alternate
/// between the u and v components of the orthonormalized (x^2 - 1) P_n basis;
/// rows alternate between normalized Legendre polynomials for each equation.
class PredatorPreyPencil final : public PencilOracle {
 public:
  struct Options {
    PredatorPreyParams params;
    int collocation = 64;
    int max_columns = 128;  // interleaved, both components
    int max_rows = 0;       // interleaved; 0: 2 * max_columns + 8
    int quadrature = 0;     // 0: max_rows + 96
  };

  explicit PredatorPreyPencil(Options opt) : opt_(opt) {
    if (!(opt_.params.d1 > 0.0 && opt_.params.d2 > 0.0 && opt_.params.tau > 0.0))
      throw Error(ErrorCode::invalid_argument, "diffusivities and tau must be positive");
    if (opt_.max_columns < 2) throw Error(ErrorCode::invalid_argument, "capacity must be >= 2");
    if (opt_.max_rows <= 0) opt_.max_rows = 2 * opt_.max_columns + 8;
    if (opt_.quadrature <= 0) opt_.quadrature = opt_.max_rows + 96;
    steady_ = solve_steady_state(opt_.params, opt_.collocation);
    build();
  }

  std::string name() const override { return "predator_prey"; }
  IndexSpace row_space() const override { return IndexSpace::naturals(); }
  IndexSpace col_space() const override { return IndexSpace::naturals(); }
  std::optional<int> max_columns() const override { return opt_.max_columns; }
  const SteadyState& steady_state() const { return steady_; }
  const PredatorPreyParams& params() const { return opt_.params; }

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
    const auto& p = opt_.params;
    const Coefficients c = coefficients(z, which);
    Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t b = 0; b < cols.size(); ++b) {
      for (std::size_t a = 0; a < rows.size(); ++a) {
        const int i = rows[a];
        const int j = cols[b];
        if (j < 1 || j > opt_.max_columns || i < 1 || i > opt_.max_rows)
          throw Error(ErrorCode::window_exceeds_capacity, "predator-prey index outside the precomputed window");
        const int eq = (i - 1) % 2;
        const int comp = (j - 1) % 2;
        const Eigen::Index r = (i - 1) / 2;
        const Eigen::Index k = (j - 1) / 2;
        Complex value;
        if (eq == 0 && comp == 0)
          value = c.diag * mass_(r, k) - p.d1 * p.tau * second_(r, k) - p.tau * p.r1 * mass_(r, k) + p.tau * with_v_(r, k);
        else if (eq == 1 && comp == 1)
          value = c.diag * mass_(r, k) - p.d2 * p.tau * second_(r, k) + p.tau * p.r2 * mass_(r, k) - p.tau * with_u_(r, k);
        else if (eq == 0)
          value = c.upper * (c.upper_uses_u ? with_u_(r, k) : with_v_(r, k));
        else
          value = c.lower * (c.upper_uses_u ? with_v_(r, k) : with_u_(r, k));
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = value;
      }
    }
    return out;
  }

  /// Two columns: u and v sampled on the mesh.
  std::optional<Matrix> evaluate_columns(Complex z, const Vector& coeffs, std::span<const double> mesh) const override {
    (void)z;
    const Eigen::Index n = coeffs.size();
    const Eigen::Index per = (n + 1) / 2;
    Vector cu = Vector::Zero(per);
    Vector cv = Vector::Zero(per);
    for (Eigen::Index j = 0; j < n; ++j) (j % 2 == 0 ? cu : cv)(j / 2) = coeffs(j);
    const RealVector points = Eigen::Map<const RealVector>(mesh.data(), static_cast<Eigen::Index>(mesh.size()));
    const auto table = legendre_table(static_cast<int>(per) + 2, 0, points);
    const Matrix phi = table[0].cast<Complex>().transpose() * basis_.topLeftCorner(per + 2, per).cast<Complex>();
    Matrix out(points.size(), 2);
    out.col(0) = phi * cu;
    out.col(1) = phi * cv;
    return out;
  }

 private:
  struct Coefficients {
    Complex diag;
    Complex upper;  // multiplies the coupling in the first equation
    Complex lower;
    bool upper_uses_u;
  };

  Coefficients coefficients(Complex z, Operand which) const {
    const auto& p = opt_.params;
    if (which == Operand::pencil)
      return {z, std::exp(-p.delay * z) * p.tau, -std::exp(-z) * p.tau, true};
    // Adjoint: the differential blocks are formally self-adjoint under the
    // Dirichlet conditions; the couplings swap places and conjugate.
    return {std::conj(z), std::conj(-std::exp(-z)) * p.tau, std::conj(std::exp(-p.delay * z)) * p.tau, false};
  }

  void build() {
    const int per_col = (opt_.max_columns + 1) / 2;
    const int per_row = (opt_.max_rows + 1) / 2;
    basis_ = orthonormal_columns(bubble_coefficients(per_col, 1));
    const Quadrature q = gauss_legendre(opt_.quadrature);
    const auto table = legendre_table(std::max(per_col + 2, per_row), 2, q.nodes);
    const RealMatrix f0 = table[0].topRows(per_col + 2).transpose() * basis_;
    const RealMatrix f2 = table[2].topRows(per_col + 2).transpose() * basis_;
    const RealVector u = chebyshev_interpolate(steady_.nodes, steady_.u, q.nodes);
    const RealVector v = chebyshev_interpolate(steady_.nodes, steady_.v, q.nodes);
    const RealMatrix rows = table[0].topRows(per_row) * q.weights.asDiagonal();
    mass_ = rows * f0;
    second_ = rows * f2;
    with_u_ = rows * (u.asDiagonal() * f0);
    with_v_ = rows * (v.asDiagonal() * f0);
  }

  Options opt_;
  SteadyState steady_;
  RealMatrix basis_;
  RealMatrix mass_;
  RealMatrix second_;
  RealMatrix with_u_;
  RealMatrix with_v_;
};

inline PencilPtr make_predator_prey(double r2, int max_columns = 128) {
  PredatorPreyPencil::Options opt;
  opt.params.r2 = r2;
  opt.max_columns = max_columns;
  return std::make_shared<PredatorPreyPencil>(opt);
}

}  // namespace nlspec::pencils
