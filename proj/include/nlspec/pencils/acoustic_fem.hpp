#pragma once

#include <algorithm>
#include <vector>

#include "nlspec/pencils/finite_section.hpp"

namespace nlspec::pencils {

/// Truncated-domain baseline for p'' + l^2 p = 0 on (0, 1) with
/// -p'(0) + i l p(0) = 0 and p(1) = 0, discretized with n linear elements:
/// (K + i l C - l^2 M) p = 0, C = e_0 e_0^T. The continuous truncated problem
/// has no eigenvalues; discrete ones drift off to infinity as n grows.
inline std::vector<Matrix> acoustic_fem_coefficients(int elements) {
  if (elements < 2) throw Error(ErrorCode::invalid_argument, "need at least two elements");
  const int n = elements;  // nodes 0..n-1 free, node n clamped
  const double h = 1.0 / elements;
  Matrix k = Matrix::Zero(n, n);
  Matrix m = Matrix::Zero(n, n);
  for (int e = 0; e < elements; ++e) {
    const int a = e;
    const int b = e + 1;
    const int nodes[2] = {a, b};
    const double ke[2][2] = {{1.0 / h, -1.0 / h}, {-1.0 / h, 1.0 / h}};
    const double me[2][2] = {{h / 3.0, h / 6.0}, {h / 6.0, h / 3.0}};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        if (nodes[r] < n && nodes[c] < n) {
          k(nodes[r], nodes[c]) += ke[r][c];
          m(nodes[r], nodes[c]) += me[r][c];
        }
  }
  Matrix damping = Matrix::Zero(n, n);
  damping(0, 0) = Complex(0.0, 1.0);
  return {k, damping, -m};
}

inline std::vector<Complex> acoustic_fem_eigenvalues(int elements) {
  return polynomial_eigenvalues(acoustic_fem_coefficients(elements));
}

inline double acoustic_fem_min_modulus(int elements) {
  const auto eig = acoustic_fem_eigenvalues(elements);
  if (eig.empty()) throw Error(ErrorCode::empty_set, "no finite eigenvalues");
  double best = std::abs(eig.front());
  for (const auto& e : eig) best = std::min(best, std::abs(e));
  return best;
}

}  // namespace nlspec::pencils
