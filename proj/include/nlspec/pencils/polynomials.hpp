#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "nlspec/core/types.hpp"

namespace nlspec::pencils {

struct Quadrature {
  RealVector nodes;
  RealVector weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
inline Quadrature gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "quadrature order must be >= 1");
  Quadrature q{RealVector(n), RealVector(n)};
  for (int k = 0; k < (n + 1) / 2; ++k) {
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int m = 2; m <= n; ++m) {
      const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes(k) = -x;
    q.weights(k) = w;
    q.nodes(n - 1 - k) = x;
    q.weights(n - 1 - k) = w;
  }
  if (n % 2 == 1) q.nodes(n / 2) = 0.0;
  return q;
}

/// Derivatives of the L2-normalized Legendre polynomials sqrt((2i+1)/2) P_i.
/// Result[m](i, q) = d^m/dx^m of the i-th polynomial at points[q].
inline std::vector<RealMatrix> legendre_table(int count, int max_order, const RealVector& points) {
  const Eigen::Index np = points.size();
  std::vector<RealMatrix> table(static_cast<std::size_t>(max_order + 1), RealMatrix::Zero(count, np));
  for (Eigen::Index q = 0; q < np; ++q) {
    const double x = points(q);
    auto& p = table[0];
    if (count > 0) p(0, q) = 1.0;
    if (count > 1) p(1, q) = x;
    for (int n = 1; n + 1 < count; ++n) p(n + 1, q) = ((2.0 * n + 1.0) * x * p(n, q) - n * p(n - 1, q)) / (n + 1.0);
    for (int m = 1; m <= max_order; ++m) {
      auto& d = table[static_cast<std::size_t>(m)];
      const auto& lower = table[static_cast<std::size_t>(m - 1)];
      if (count > 1) d(1, q) = m == 1 ? 1.0 : 0.0;
      for (int n = 1; n + 1 < count; ++n) d(n + 1, q) = d(n - 1, q) + (2.0 * n + 1.0) * lower(n, q);
    }
  }
  for (auto& t : table)
    for (int i = 0; i < count; ++i) t.row(i) *= std::sqrt((2.0 * i + 1.0) / 2.0);
  return table;
}

/// Coefficients of x * p in the normalized Legendre basis, given those of p.
/// x p~_n = a_{n+1} p~_{n+1} + a_n p~_{n-1} with a_n = n / sqrt(4n^2 - 1).
inline RealVector legendre_multiply_x(const RealVector& c) {
  RealVector out = RealVector::Zero(c.size() + 1);
  for (Eigen::Index n = 0; n < c.size(); ++n) {
    const double up = (n + 1.0) / std::sqrt(4.0 * (n + 1.0) * (n + 1.0) - 1.0);
    out(n + 1) += up * c(n);
    if (n >= 1) out(n - 1) += n / std::sqrt(4.0 * n * n - 1.0) * c(n);
  }
  return out;
}

/// Normalized Legendre coefficients of (x^2 - 1)^power * P_n (unnormalized P_n)
/// for n = 0 .. count-1, as columns of a (count + 2 power) x count matrix.
inline RealMatrix bubble_coefficients(int count, int power) {
  const int rows = count + 2 * power;
  RealMatrix c = RealMatrix::Zero(rows, count);
  for (int n = 0; n < count; ++n) {
    RealVector v = RealVector::Zero(n + 1);
    v(n) = 1.0 / std::sqrt((2.0 * n + 1.0) / 2.0);
    for (int k = 0; k < power; ++k) {
      const RealVector x2 = legendre_multiply_x(legendre_multiply_x(v));
      RealVector next = x2;
      next.head(v.size()) -= v;
      v = next;
    }
    c.col(n).head(v.size()) = v;
  }
  return c;
}

/// Thin QR of a full-rank real matrix with the sign convention diag(R) > 0,
/// so leading columns do not depend on how many columns are factored.
inline RealMatrix orthonormal_columns(const RealMatrix& c) {
  Eigen::HouseholderQR<RealMatrix> qr(c);
  RealMatrix q = qr.householderQ() * RealMatrix::Identity(c.rows(), c.cols());
  const RealMatrix r = qr.matrixQR().topRows(c.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < c.cols(); ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  return q;
}

/// Chebyshev-Gauss-Lobatto nodes cos(pi k / m), k = 0..m, and the
/// first-derivative collocation matrix.
struct ChebyshevGrid {
  RealVector nodes;
  RealMatrix diff;
};

inline ChebyshevGrid chebyshev_grid(int m) {
  if (m < 2) throw Error(ErrorCode::invalid_argument, "Chebyshev grid needs m >= 2");
  ChebyshevGrid g{RealVector(m + 1), RealMatrix::Zero(m + 1, m + 1)};
  RealVector c(m + 1);
  for (int k = 0; k <= m; ++k) {
    g.nodes(k) = std::cos(std::numbers::pi * k / m);
    c(k) = ((k == 0 || k == m) ? 2.0 : 1.0) * (k % 2 == 0 ? 1.0 : -1.0);
  }
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= m; ++j)
      if (i != j) g.diff(i, j) = c(i) / c(j) / (g.nodes(i) - g.nodes(j));
    // Negative-sum trick for the diagonal.
    g.diff(i, i) = -g.diff.row(i).sum();
  }
  return g;
}

/// Barycentric interpolation from CGL nodes to arbitrary points.
inline RealVector chebyshev_interpolate(const RealVector& nodes, const RealVector& values, const RealVector& points) {
  const Eigen::Index m = nodes.size() - 1;
  RealVector out(points.size());
  for (Eigen::Index q = 0; q < points.size(); ++q) {
    double num = 0.0;
    double den = 0.0;
    bool exact = false;
    for (Eigen::Index k = 0; k <= m; ++k) {
      const double diff = points(q) - nodes(k);
      if (diff == 0.0) {
        out(q) = values(k);
        exact = true;
        break;
      }
      const double w = ((k == 0 || k == m) ? 0.5 : 1.0) * (k % 2 == 0 ? 1.0 : -1.0) / diff;
      num += w * values(k);
      den += w;
    }
    if (!exact) out(q) = num / den;
  }
  return out;
}

/// Laguerre functions L_k(x) exp(-x/2), k = 0..count-1, at the given points.
inline RealMatrix laguerre_functions(int count, const RealVector& points) {
  RealMatrix out = RealMatrix::Zero(count, points.size());
  for (Eigen::Index q = 0; q < points.size(); ++q) {
    const double x = points(q);
    const double damp = std::exp(-x / 2.0);
    double prev = 0.0;
    double cur = 1.0;
    for (int k = 0; k < count; ++k) {
      out(k, q) = cur * damp;
      const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
      prev = cur;
      cur = next;
    }
  }
  return out;
}

}  // namespace nlspec::pencils
