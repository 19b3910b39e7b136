#pragma once

#include <cmath>
#include <span>

#include "nlspec/algorithms/gamma_field.hpp"

namespace nlspec {

struct Pseudoeigenfunction {
  Vector coefficients;  // unit norm, length n2
  double residual = 0.0;  // ||T u|| / ||u|| on the truncation
  GammaEstimate estimate;  // column-side sigma_inf, one-sided
  int n1 = 0;
  bool degenerate = false;  // smallest singular value not separated by tol
};

/// Right singular vector attaining the smallest singular value of the
/// column-side truncation Q_{n1} T(z) P_{n2}*.
inline Pseudoeigenfunction pseudoeigenfunction(const PencilOracle& oracle, Complex z, const GammaSettings& settings) {
  check_settings(oracle, settings);
  if (settings.mode == GammaMode::gram)
    throw Error(ErrorCode::config, "pseudoeigenfunctions need column-side truncations (rect or band mode)");
  const int n1 = settings.mode == GammaMode::band ? settings.n2 + *oracle.band() : settings.effective_n1(oracle);
  const Matrix m = assemble_truncation(oracle, z, {n1, settings.n2}, Operand::pencil);
  const double tol = settings.effective_tol();
  const auto triple = linalg::smallest_singular_triple(m, tol);
  Pseudoeigenfunction out;
  out.coefficients = triple.right;
  out.n1 = n1;
  out.degenerate = triple.degenerate;
  out.residual = (m * triple.right).norm() / triple.right.norm();
  const Side side = settings.mode == GammaMode::band ? Side::upper : Side::lower;
  out.estimate = detail::shifted(triple.value, detail::backward_error(m.rows(), m.cols(), triple.largest), side, tol,
                                 settings.mode == GammaMode::band ? Provenance::band_exact : Provenance::rect_lambda1);
  return out;
}

/// std / mean of |u(x) / reference(x)| over the samples.
inline double ratio_flatness(std::span<const Complex> values, std::span<const Complex> reference) {
  if (values.size() != reference.size() || values.empty())
    throw Error(ErrorCode::invalid_argument, "flatness needs equal, nonempty samples");
  const auto n = static_cast<double>(values.size());
  double mean = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) mean += std::abs(values[k] / reference[k]);
  mean /= n;
  double var = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double d = std::abs(values[k] / reference[k]) - mean;
    var += d * d;
  }
  return std::sqrt(var / n) / mean;
}

}  // namespace nlspec
