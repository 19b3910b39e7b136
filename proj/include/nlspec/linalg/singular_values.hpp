#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include <lapacke.h>

#include "nlspec/core/types.hpp"

namespace nlspec::linalg {

/// Lower/upper bandwidth of the actual nonzero pattern.
struct BandProfile {
  Eigen::Index lower = 0;
  Eigen::Index upper = 0;
};

inline BandProfile band_profile(const Matrix& m) {
  BandProfile p;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) == Complex(0.0, 0.0)) continue;
      if (i > j) p.lower = std::max(p.lower, i - j);
      if (j > i) p.upper = std::max(p.upper, j - i);
    }
  }
  return p;
}

namespace detail {

inline lapack_complex_double* lapack_ptr(Complex* p) { return reinterpret_cast<lapack_complex_double*>(p); }

inline void check_info(lapack_int info, const char* routine) {
  if (info != 0)
    throw Error(ErrorCode::non_finite, std::string(routine) + " failed with info=" + std::to_string(info));
}

// Requires rows >= cols.
inline std::vector<double> banded_singular_values(const Matrix& m, BandProfile p) {
  const auto rows = static_cast<lapack_int>(m.rows());
  const auto cols = static_cast<lapack_int>(m.cols());
  const auto kl = static_cast<lapack_int>(p.lower);
  const auto ku = static_cast<lapack_int>(p.upper);
  const lapack_int ldab = kl + ku + 1;
  std::vector<Complex> ab(static_cast<std::size_t>(ldab) * static_cast<std::size_t>(cols), Complex(0.0, 0.0));
  for (lapack_int j = 0; j < cols; ++j) {
    const lapack_int lo = std::max<lapack_int>(0, j - ku);
    const lapack_int hi = std::min<lapack_int>(rows - 1, j + kl);
    for (lapack_int i = lo; i <= hi; ++i) ab[static_cast<std::size_t>(j * ldab + ku + i - j)] = m(i, j);
  }
  std::vector<double> d(static_cast<std::size_t>(cols));
  std::vector<double> e(static_cast<std::size_t>(std::max<lapack_int>(cols, 1)));
  check_info(LAPACKE_zgbbrd(LAPACK_COL_MAJOR, 'N', rows, cols, 0, kl, ku, lapack_ptr(ab.data()), ldab, d.data(),
                            e.data(), nullptr, 1, nullptr, 1, nullptr, 1),
             "zgbbrd");
  check_info(LAPACKE_dbdsqr(LAPACK_COL_MAJOR, 'U', cols, 0, 0, 0, d.data(), e.data(), nullptr, 1, nullptr, 1,
                            nullptr, 1),
             "dbdsqr");
  return d;
}

inline std::vector<double> dense_singular_values(Matrix m) {
  const auto rows = static_cast<lapack_int>(m.rows());
  const auto cols = static_cast<lapack_int>(m.cols());
  std::vector<double> s(static_cast<std::size_t>(std::min(rows, cols)));
  check_info(LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, lapack_ptr(m.data()), rows, s.data(), nullptr, 1,
                            nullptr, 1),
             "zgesdd");
  return s;
}

}  // namespace detail

/// All singular values in descending order. Narrow-band matrices go through
/// band bidiagonalization, everything else through divide and conquer.
inline std::vector<double> singular_values(const Matrix& m) {
  if (m.size() == 0) return {};
  if (!m.allFinite()) throw Error(ErrorCode::non_finite, "matrix has non-finite entries");
  if (m.rows() >= m.cols() && m.cols() >= 16) {
    const BandProfile p = band_profile(m);
    if (4 * (p.lower + p.upper + 1) <= m.cols()) return detail::banded_singular_values(m, p);
  }
  return detail::dense_singular_values(m);
}

/// Smallest singular triple (value, right vector) via a full SVD; ties are
/// resolved by taking the last triple in the backend order.
struct SingularTriple {
  double value = 0.0;
  double largest = 0.0;
  Vector right;
  bool degenerate = false;
};

inline SingularTriple smallest_singular_triple(const Matrix& m, double tie_tol) {
  if (!m.allFinite()) throw Error(ErrorCode::non_finite, "matrix has non-finite entries");
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index k = m.cols();
  SingularTriple out;
  out.largest = s.size() > 0 ? s(0) : 0.0;
  // Wide matrices have a nontrivial kernel: any kernel vector attains zero.
  out.value = k > s.size() ? 0.0 : s(k - 1);
  out.right = svd.matrixV().col(k - 1);
  const Eigen::Index next = k - 2;
  if (next >= 0) {
    const double second = next < s.size() ? s(next) : 0.0;
    out.degenerate = second - out.value <= tie_tol;
  }
  return out;
}

}  // namespace nlspec::linalg
