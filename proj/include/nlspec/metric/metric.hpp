#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "nlspec/core/grid.hpp"

namespace nlspec {

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Lattice h Z^2 clipped to a window and to U, with 8-neighbor edges weighted
/// by length times the trapezoidal average of the conformal weight.
class LatticeGraph {
 public:
  LatticeGraph(const DomainRegion& region, const Rect& window, double h) : region_(region), h_(h) {
    ix0_ = static_cast<long long>(std::ceil(window.xmin / h));
    iy0_ = static_cast<long long>(std::ceil(window.ymin / h));
    nx_ = static_cast<long long>(std::floor(window.xmax / h)) - ix0_ + 1;
    ny_ = static_cast<long long>(std::floor(window.ymax / h)) - iy0_ + 1;
    if (nx_ < 2 || ny_ < 2) throw Error(ErrorCode::invalid_argument, "metric window holds fewer than 2x2 lattice nodes");
    inside_.resize(static_cast<std::size_t>(nx_ * ny_));
    weight_.resize(inside_.size());
    for (long long k = 0; k < nx_ * ny_; ++k) {
      const Complex p = point(k);
      inside_[static_cast<std::size_t>(k)] = region_.contains(p);
      weight_[static_cast<std::size_t>(k)] = inside_[static_cast<std::size_t>(k)] ? region_.metric_weight(p) : kInf;
    }
  }

  std::size_t size() const { return inside_.size(); }
  bool inside(std::size_t k) const { return inside_[k]; }

  Complex point(long long k) const {
    const long long ix = k % nx_;
    const long long iy = k / nx_;
    return Complex(static_cast<double>(ix0_ + ix) * h_, static_cast<double>(iy0_ + iy) * h_);
  }

  /// Weighted length of the straight segment p -> q, or inf if it leaves U.
  double segment(Complex p, Complex q) const {
    for (int t = 0; t <= 4; ++t)
      if (!region_.contains(p + (q - p) * (t / 4.0))) return kInf;
    return std::abs(q - p) * 0.5 * (region_.metric_weight(p) + region_.metric_weight(q));
  }

  /// Lattice nodes at the corners of the cell containing z, with edge weights.
  std::vector<std::pair<std::size_t, double>> attach(Complex z) const {
    std::vector<std::pair<std::size_t, double>> out;
    const auto cx = static_cast<long long>(std::floor(z.real() / h_)) - ix0_;
    const auto cy = static_cast<long long>(std::floor(z.imag() / h_)) - iy0_;
    for (long long dy = 0; dy <= 1; ++dy) {
      for (long long dx = 0; dx <= 1; ++dx) {
        const long long ix = cx + dx;
        const long long iy = cy + dy;
        if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_) continue;
        const auto k = static_cast<std::size_t>(iy * nx_ + ix);
        if (!inside_[k]) continue;
        const double w = segment(z, point(static_cast<long long>(k)));
        if (std::isfinite(w)) out.emplace_back(k, w);
      }
    }
    return out;
  }

  std::vector<double> shortest_paths(const std::vector<std::pair<std::size_t, double>>& sources) const {
    std::vector<double> dist(size(), kInf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (const auto& [k, d] : sources) {
      if (d < dist[k]) {
        dist[k] = d;
        queue.emplace(d, k);
      }
    }
    while (!queue.empty()) {
      const auto [d, k] = queue.top();
      queue.pop();
      if (d > dist[k]) continue;
      const long long ix = static_cast<long long>(k) % nx_;
      const long long iy = static_cast<long long>(k) / nx_;
      for (long long dy = -1; dy <= 1; ++dy) {
        for (long long dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const long long jx = ix + dx;
          const long long jy = iy + dy;
          if (jx < 0 || jy < 0 || jx >= nx_ || jy >= ny_) continue;
          const auto j = static_cast<std::size_t>(jy * nx_ + jx);
          if (!inside_[j]) continue;
          const Complex mid = 0.5 * (point(static_cast<long long>(k)) + point(static_cast<long long>(j)));
          if (!region_.contains(mid)) continue;
          const double len = h_ * ((dx != 0 && dy != 0) ? std::sqrt(2.0) : 1.0);
          const double nd = d + len * 0.5 * (weight_[k] + weight_[j]);
          if (nd < dist[j]) {
            dist[j] = nd;
            queue.emplace(nd, j);
          }
        }
      }
    }
    return dist;
  }

  /// Distance from every node to the nearest point of the set.
  std::vector<double> distance_to_set(std::span<const Complex> set) const {
    std::vector<std::pair<std::size_t, double>> sources;
    for (const Complex& p : set) {
      const auto corners = attach(p);
      sources.insert(sources.end(), corners.begin(), corners.end());
    }
    return shortest_paths(sources);
  }

 private:
  DomainRegion region_;
  double h_;
  long long ix0_ = 0;
  long long iy0_ = 0;
  long long nx_ = 0;
  long long ny_ = 0;
  std::vector<bool> inside_;
  std::vector<double> weight_;
};

}  // namespace detail

/// Boundary-adapted metric d_U, discretized on a lattice of pitch h over a
/// window. For U = C every distance is Euclidean and exact.
class MetricContext {
 public:
  MetricContext(DomainRegion region, double h, Rect window)
      : region_(std::move(region)), h_(h), window_(window), cache_(std::make_shared<Cache>()) {
    if (!(h > 0.0)) throw Error(ErrorCode::invalid_argument, "path step h must be positive");
    if (!window.has_area()) throw Error(ErrorCode::invalid_argument, "metric window has no area");
  }

  const DomainRegion& region() const { return region_; }
  double h() const { return h_; }
  const Rect& window() const { return window_; }
  Complex base_point() const { return region_.base_point(); }

  const detail::LatticeGraph& graph() const {
    std::call_once(cache_->graph_once, [&] { cache_->graph = std::make_unique<detail::LatticeGraph>(region_, window_, h_); });
    return *cache_->graph;
  }

  /// d_U(x0, node) for every lattice node; defines the sampled balls S_r(x0).
  const std::vector<double>& base_distances() const {
    std::call_once(cache_->base_once, [&] {
      const auto& g = graph();
      if (region_.is_whole_plane()) {
        cache_->base.resize(g.size());
        for (std::size_t k = 0; k < g.size(); ++k)
          cache_->base[k] = std::abs(g.point(static_cast<long long>(k)) - base_point());
      } else {
        const Complex x0[] = {base_point()};
        cache_->base = g.distance_to_set(x0);
      }
    });
    return cache_->base;
  }

 private:
  struct Cache {
    std::once_flag graph_once;
    std::once_flag base_once;
    std::unique_ptr<detail::LatticeGraph> graph;
    std::vector<double> base;
  };

  DomainRegion region_;
  double h_;
  Rect window_;
  std::shared_ptr<Cache> cache_;
};

/// Geodesic distance in the conformal metric |dz| / min{1, dist(z, dU)}.
inline double du_distance(const MetricContext& ctx, Complex a, Complex b) {
  const auto& region = ctx.region();
  if (!region.contains(a) || !region.contains(b))
    throw Error(ErrorCode::point_outside_domain, "du_distance endpoints must lie in U");
  if (region.is_whole_plane()) return std::abs(a - b);
  if (a == b) return 0.0;
  if (!ctx.window().contains(a) || !ctx.window().contains(b))
    throw Error(ErrorCode::invalid_argument, "endpoints must lie inside the metric window");
  const auto& g = ctx.graph();
  const auto from = g.attach(a);
  const auto to = g.attach(b);
  const auto dist = g.shortest_paths(from);
  double best = std::abs(a - b) <= ctx.h() * std::sqrt(2.0) ? g.segment(a, b) : detail::kInf;
  for (const auto& [k, w] : to) best = std::min(best, dist[k] + w);
  if (!std::isfinite(best))
    throw Error(ErrorCode::disconnected, "no lattice path at h = " + std::to_string(ctx.h()) + "; retry with a smaller h");
  return best;
}

/// True when no point of the set lies in the sampled ball S_r(x0).
inline bool ball_empty(const MetricContext& ctx, std::span<const Complex> set, double r) {
  for (const Complex& z : set) {
    if (!ctx.region().contains(z)) continue;
    if (ctx.region().is_whole_plane()) {
      if (std::abs(z - ctx.base_point()) < r) return false;
      continue;
    }
    const auto& base = ctx.base_distances();
    for (const auto& [k, w] : ctx.graph().attach(z))
      if (base[k] + w < r) return false;
  }
  return true;
}

struct AttouchWets {
  double value = 0.0;        // truncated series plus certificate: an upper bound
  double truncated = 0.0;    // the first n_terms terms
  double certificate = 0.0;  // 2^-n_terms
};

/// Truncated Attouch-Wets distance
///   sum_{n=1}^{N} 2^-n min{1, sup_{x in S_n(x0)} |d_U(x, X) - d_U(x, Y)|}
/// with the supremum over lattice nodes of the context window.
inline AttouchWets attouch_wets(const MetricContext& ctx, std::span<const Complex> x, std::span<const Complex> y,
                                int n_terms = 20) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::empty_set, "attouch_wets needs nonempty sets; use ball_empty");
  if (n_terms < 1) throw Error(ErrorCode::invalid_argument, "n_terms must be >= 1");
  const auto& g = ctx.graph();
  const auto& base = ctx.base_distances();

  std::vector<double> dx;
  std::vector<double> dy;
  if (ctx.region().is_whole_plane()) {
    auto nearest = [&](std::span<const Complex> set) {
      std::vector<double> d(g.size(), detail::kInf);
      for (std::size_t k = 0; k < g.size(); ++k) {
        const Complex p = g.point(static_cast<long long>(k));
        for (const Complex& s : set) d[k] = std::min(d[k], std::abs(p - s));
      }
      return d;
    };
    dx = nearest(x);
    dy = nearest(y);
  } else {
    dx = g.distance_to_set(x);
    dy = g.distance_to_set(y);
  }

  // sup over each ball: bucket every node by the smallest n with base < n.
  std::vector<double> sup(static_cast<std::size_t>(n_terms) + 1, 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g.inside(k) || !std::isfinite(base[k])) continue;
    const double diff = (std::isfinite(dx[k]) && std::isfinite(dy[k])) ? std::abs(dx[k] - dy[k])
                        : (std::isfinite(dx[k]) == std::isfinite(dy[k])) ? 0.0
                                                                          : 1.0;
    const auto n = static_cast<long long>(std::floor(base[k])) + 1;
    if (n > n_terms) continue;
    sup[static_cast<std::size_t>(n)] = std::max(sup[static_cast<std::size_t>(n)], diff);
  }
  AttouchWets out;
  double running = 0.0;
  for (int n = 1; n <= n_terms; ++n) {
    running = std::max(running, sup[static_cast<std::size_t>(n)]);
    out.truncated += std::ldexp(std::min(1.0, running), -n);
  }
  out.certificate = std::ldexp(1.0, -n_terms);
  out.value = out.truncated + out.certificate;
  return out;
}

}  // namespace nlspec
