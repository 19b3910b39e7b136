#include <random>

#include <gtest/gtest.h>

#include "nlspec/nlspec.hpp"
#include "support/oracles.hpp"

using namespace nlspec;

TEST(Metric, WholePlaneIsEuclidean) {
  const MetricContext ctx(DomainRegion::whole_plane(), 0.1, Rect{-5, 5, -5, 5});
  EXPECT_EQ(du_distance(ctx, 0.0, Complex(3.0, 4.0)), 5.0);
  EXPECT_EQ(du_distance(ctx, Complex(1, 1), Complex(1, 1)), 0.0);
}

TEST(Metric, DiskDistanceDivergesAtBoundary) {
  // Radial path from 0 to r < 1 in the unit disk: the weight is 1 / (1 - t).
  const auto disk = DomainRegion::open_disk({0.0, 0.0}, 1.0);
  const MetricContext ctx(disk, 1.0 / 512, Rect{-1, 1, -1, 1});
  double prev = 0.0;
  for (int m = 1; m <= 4; ++m) {
    const double r = 1.0 - std::ldexp(1.0, -m);
    const double exact = oracle::simpson([](double t) { return 1.0 / std::min(1.0, 1.0 - t); }, 0.0, r);
    EXPECT_NEAR(exact, m * std::log(2.0), 1e-6);
    const double d = du_distance(ctx, 0.0, r);
    EXPECT_GE(d, exact * (1 - 1e-9));  // graph paths over-estimate
    EXPECT_LE(d, exact * 1.02);
    EXPECT_GT(d, prev);
    prev = d;
  }
}

TEST(Metric, SymmetryAndTriangle) {
  const auto region = DomainRegion::punctured_plane({0.0, 0.0}, {1.0, 0.0});
  const MetricContext ctx(region, 1.0 / 32, Rect{-2, 2, -2, 2});
  std::mt19937_64 rng(6);
  for (int k = 0; k < 10; ++k) {
    const Complex a = oracle::random_point(rng, -1.8, 1.8, -1.8, 1.8);
    const Complex b = oracle::random_point(rng, -1.8, 1.8, -1.8, 1.8);
    const Complex c = oracle::random_point(rng, -1.8, 1.8, -1.8, 1.8);
    const double ab = du_distance(ctx, a, b);
    EXPECT_NEAR(ab, du_distance(ctx, b, a), 1e-9 * (1 + ab));
    EXPECT_LE(ab, du_distance(ctx, a, c) + du_distance(ctx, c, b) + 4 * ctx.h() * 8);
    EXPECT_GE(ab, std::abs(a - b) * (1 - 1e-12));  // weight >= 1
  }
}

TEST(Metric, Errors) {
  const auto disk = DomainRegion::open_disk({0.0, 0.0}, 1.0);
  const MetricContext ctx(disk, 0.05, Rect{-1, 1, -1, 1});
  EXPECT_THROW(du_distance(ctx, 0.0, 2.0), Error);
  const auto slit = DomainRegion::slit_plane(0.0, {1.0, 0.0});
  // Half window over the slit (negative reals): the two sides share no lattice edge.
  const MetricContext coarse(slit, 1.0, Rect{-1, 0, -1, 1});
  try {
    du_distance(coarse, Complex(-0.5, 0.01), Complex(-0.5, -0.01));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::disconnected);
  }
  const MetricContext plane(DomainRegion::whole_plane(), 0.1, Rect{-1, 1, -1, 1});
  const std::vector<Complex> empty;
  const std::vector<Complex> one = {0.0};
  EXPECT_THROW(attouch_wets(plane, empty, one), Error);
}

TEST(AttouchWets, IdenticalSetsAndSymmetry) {
  const MetricContext ctx(DomainRegion::whole_plane(), 1.0 / 16, Rect{-8, 8, -8, 8});
  const std::vector<Complex> x = {0.0, Complex(1.0, 2.0), Complex(-3.0, 0.5)};
  const std::vector<Complex> y = {Complex(0.2, 0.0), Complex(2.0, 2.0)};
  const auto same = attouch_wets(ctx, x, x);
  EXPECT_EQ(same.truncated, 0.0);
  EXPECT_EQ(same.value, same.certificate);
  EXPECT_EQ(same.certificate, std::ldexp(1.0, -20));
  EXPECT_EQ(attouch_wets(ctx, x, y).value, attouch_wets(ctx, y, x).value);
}

TEST(AttouchWets, PointPairGivesDistance) {
  // sup over a large ball of ||p| - |p - d|| is d, attained on the real axis.
  const MetricContext ctx(DomainRegion::whole_plane(), 1.0 / 16, Rect{-24, 24, -24, 24});
  for (double d : {0.25, 0.5, 0.75}) {
    const std::vector<Complex> x = {0.0};
    const std::vector<Complex> y = {d};
    const auto aw = attouch_wets(ctx, x, y, 20);
    // Balls S_n with n >= 1 contain lattice points on the real axis beyond d.
    EXPECT_NEAR(aw.truncated, d * (1.0 - std::ldexp(1.0, -20)), 1e-12);
  }
}

TEST(AttouchWets, TriangleInequality) {
  const MetricContext ctx(DomainRegion::punctured_plane({0.0, 0.0}, {1.0, 0.0}), 1.0 / 16, Rect{-3, 3, -3, 3});
  std::mt19937_64 rng(77);
  auto random_set = [&] {
    std::vector<Complex> s;
    const int n = std::uniform_int_distribution<>(1, 5)(rng);
    for (int k = 0; k < n; ++k) s.push_back(oracle::random_point(rng, -2.5, 2.5, -2.5, 2.5));
    return s;
  };
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_set();
    const auto y = random_set();
    const auto w = random_set();
    const auto xy = attouch_wets(ctx, x, y, 10);
    const auto xw = attouch_wets(ctx, x, w, 10);
    const auto wy = attouch_wets(ctx, w, y, 10);
    EXPECT_LE(xy.truncated, xw.truncated + wy.truncated + 2 * xy.certificate);
  }
}

TEST(AttouchWets, BallEmpty) {
  const MetricContext ctx(DomainRegion::whole_plane(), 0.1, Rect{-4, 4, -4, 4});
  const std::vector<Complex> far = {Complex(3.0, 0.0)};
  EXPECT_TRUE(ball_empty(ctx, far, 2.0));
  EXPECT_FALSE(ball_empty(ctx, far, 3.5));
  const auto disk = DomainRegion::open_disk({0.0, 0.0}, 1.0);
  const MetricContext dctx(disk, 1.0 / 64, Rect{-1, 1, -1, 1});
  const std::vector<Complex> edge = {Complex(0.95, 0.0)};
  // d_U(0, 0.95) = ln 20 ~ 3.0 > 2.
  EXPECT_TRUE(ball_empty(dctx, edge, 2.0));
  EXPECT_FALSE(ball_empty(dctx, edge, 3.2));
}

TEST(MetricContext, ConcurrentBaseDistances) {
  const MetricContext ctx(DomainRegion::open_disk({0.0, 0.0}, 1.0), 1.0 / 32, Rect{-1, 1, -1, 1});
  std::vector<const std::vector<double>*> seen(16);
  thread_pool_for(8)(seen.size(), [&](std::size_t k) { seen[k] = &ctx.base_distances(); });
  for (auto* p : seen) EXPECT_EQ(p, seen[0]);
}
