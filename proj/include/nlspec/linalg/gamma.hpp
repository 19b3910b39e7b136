#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlspec/core/pencil.hpp"
#include "nlspec/linalg/singular_values.hpp"

namespace nlspec {

enum class Side { lower, upper };
enum class Provenance { rect_lambda1, gram_lambda2, band_exact };

inline const char* to_string(Side s) { return s == Side::lower ? "lower" : "upper"; }

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::rect_lambda1: return "rect_lambda1";
    case Provenance::gram_lambda2: return "gram_lambda2";
    case Provenance::band_exact: return "band_exact";
  }
  return "unknown";
}

/// One-sided approximation of an injection modulus.
///
/// side == lower: value <= exact <= value + tol
/// side == upper: value - tol <= exact <= value
/// `center` is the computed quantity before the one-sided shift.
struct GammaEstimate {
  double value = 0.0;
  Side side = Side::lower;
  double tol = 0.0;
  Provenance provenance = Provenance::rect_lambda1;
  double center = 0.0;

  double lower_bound() const { return side == Side::lower ? value : std::max(0.0, value - tol); }
  double upper_bound() const { return side == Side::lower ? value + tol : value; }
};

inline double default_tol(int n2) { return 1.0 / (2.0 * n2); }

namespace detail {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;

inline double backward_error(Eigen::Index rows, Eigen::Index cols, double norm) {
  return 100.0 * static_cast<double>(std::max(rows, cols)) * kUnitRoundoff * norm;
}

inline GammaEstimate shifted(double center, double slack, Side side, double tol, Provenance prov) {
  const double h = std::max(tol / 2.0, slack);
  GammaEstimate g;
  g.center = center;
  g.side = side;
  g.tol = 2.0 * h;
  g.provenance = prov;
  g.value = side == Side::lower ? std::max(0.0, center - h) : center + h;
  return g;
}

// Combine two same-sided estimates of quantities a and b into one for min(a, b).
inline GammaEstimate min_of(const GammaEstimate& a, const GammaEstimate& b) {
  GammaEstimate g = a.value <= b.value ? a : b;
  g.center = std::min(a.center, b.center);
  g.tol = std::max(a.tol, b.tol);
  return g;
}

}  // namespace detail

/// Smallest singular value of M (the injection modulus of M as a map from
/// C^cols), shifted to the requested side. A matrix with fewer rows than
/// columns has a kernel and modulus 0.
inline GammaEstimate sigma_inf(const Matrix& m, double tol, Side side) {
  if (m.rows() < 1 || m.cols() < 1) throw Error(ErrorCode::invalid_argument, "matrix must be nonempty");
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "tol must be positive");
  const auto s = linalg::singular_values(m);
  const double norm = s.front();
  const double smallest = m.rows() < m.cols() ? 0.0 : s.back();
  return detail::shifted(smallest, detail::backward_error(m.rows(), m.cols(), norm), side, tol,
                         Provenance::rect_lambda1);
}

/// Lower estimate of gamma_{n2,n1}: min over the n1 x n2 truncations of T(z)
/// and of T(z)*.
inline GammaEstimate gamma_rect(const PencilOracle& oracle, Complex z, int n2, int n1, double tol) {
  const Matrix forward = assemble_truncation(oracle, z, {n1, n2}, Operand::pencil);
  const Matrix backward = assemble_truncation(oracle, z, {n1, n2}, Operand::adjoint);
  GammaEstimate g = detail::min_of(sigma_inf(forward, tol, Side::lower), sigma_inf(backward, tol, Side::lower));
  g.provenance = Provenance::rect_lambda1;
  return g;
}

/// gamma_{n2} for a banded pencil: rows n2 + b capture every nonzero of the
/// first n2 columns. Upper estimate of gamma(z, T).
inline GammaEstimate gamma_band_exact(const PencilOracle& oracle, Complex z, int n2, double tol) {
  const auto b = oracle.band();
  if (!b) throw Error(ErrorCode::missing_bandwidth, oracle.name() + " declares no bandwidth");
  const int n1 = n2 + *b;
  const Matrix forward = assemble_truncation(oracle, z, {n1, n2}, Operand::pencil);
  const Matrix backward = assemble_truncation(oracle, z, {n1, n2}, Operand::adjoint);
  GammaEstimate g = detail::min_of(sigma_inf(forward, tol, Side::upper), sigma_inf(backward, tol, Side::upper));
  g.provenance = Provenance::band_exact;
  return g;
}

namespace detail {

inline GammaEstimate gram_modulus(const Matrix& gram, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw Error(ErrorCode::non_finite, "Gram eigensolver failed");
  const double lambda = eig.eigenvalues()(0);
  const double norm = std::max(std::abs(eig.eigenvalues()(0)), std::abs(eig.eigenvalues()(gram.rows() - 1)));
  const double err = backward_error(gram.rows(), gram.cols(), norm);
  if (lambda < -std::max(tol, err))
    throw Error(ErrorCode::indefinite_gram, "Gram matrix has eigenvalue " + std::to_string(lambda));
  const double clamped = std::max(0.0, lambda);
  const double center = std::sqrt(clamped);
  const double spread = std::sqrt(clamped + err) - std::sqrt(std::max(0.0, clamped - err));
  return shifted(center, spread, Side::upper, tol, Provenance::gram_lambda2);
}

}  // namespace detail

/// gamma_{n2} from the Gram elements of T*T and TT*. Upper estimate of gamma(z, T).
inline GammaEstimate gamma_gram(const PencilOracle& oracle, Complex z, int n2, double tol) {
  if (oracle.capability() != Capability::lambda2)
    throw Error(ErrorCode::missing_gram, oracle.name() + " has no Gram (Lambda2) access");
  if (n2 < 1) throw Error(ErrorCode::invalid_argument, "n2 must be >= 1");
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "tol must be positive");
  if (!oracle.domain().contains(z))
    throw Error(ErrorCode::point_outside_domain, format_complex(z) + " is outside " + oracle.domain().description());
  const Matrix cols = oracle.gram_block(z, n2, Operand::pencil);
  const Matrix rows = oracle.gram_block(z, n2, Operand::adjoint);
  GammaEstimate g = detail::min_of(detail::gram_modulus(cols, tol), detail::gram_modulus(rows, tol));
  g.provenance = Provenance::gram_lambda2;
  return g;
}

}  // namespace nlspec
