#pragma once

#include <algorithm>

#include "nlspec/core/types.hpp"

namespace nlspec {

namespace detail {

// Orthonormal basis of the graph {(x, Ax)} as a (k+m) x k matrix.
inline Matrix graph_basis(const Matrix& a) {
  const Eigen::Index k = a.cols();
  Matrix stacked(k + a.rows(), k);
  stacked.topRows(k).setIdentity();
  stacked.bottomRows(a.rows()) = a;
  Eigen::HouseholderQR<Matrix> qr(stacked);
  return qr.householderQ() * Matrix::Identity(stacked.rows(), k);
}

inline double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace detail

/// Symmetric gap between the graphs of two m x k matrices.
///
/// Both graphs have dimension k, so the two one-sided gaps coincide; each is
/// evaluated as ||(I - P_B) Q_A|| from the residual directly, which keeps
/// small gaps accurate.
inline double graph_gap(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::invalid_argument, "graph_gap needs equal shapes");
  if (!a.allFinite() || !b.allFinite()) throw Error(ErrorCode::non_finite, "graph_gap input has non-finite entries");
  if (a.cols() == 0) return 0.0;
  const Matrix qa = detail::graph_basis(a);
  const Matrix qb = detail::graph_basis(b);
  const double ab = detail::spectral_norm(qa - qb * (qb.adjoint() * qa));
  const double ba = detail::spectral_norm(qb - qa * (qa.adjoint() * qb));
  return std::clamp(std::max(ab, ba), 0.0, 1.0);
}

}  // namespace nlspec
