#include <random>
#include <set>

#include <gtest/gtest.h>

#include "nlspec/nlspec.hpp"
#include "support/oracles.hpp"

using namespace nlspec;

namespace {

PencilPtr identity_pencil() {
  return std::make_shared<FunctionPencil>(
      "identity", IndexSpace::naturals(), IndexSpace::naturals(),
      [](Complex, int i, int j) { return i == j ? Complex(1.0) : Complex(0.0); }, 0);
}

}  // namespace

TEST(IndexSpace, IntegerEnumerationIsInterleaved) {
  const auto z = IndexSpace::integers();
  EXPECT_EQ(z.ord(0), 1);
  EXPECT_EQ(z.ord(1), 2);
  EXPECT_EQ(z.ord(-1), 3);
  EXPECT_EQ(z.ord(2), 4);
  EXPECT_EQ(z.ord(-2), 5);
  for (int k = 1; k < 200; ++k) EXPECT_EQ(z.ord(z.from_ord(k)), k);
}

TEST(IndexSpace, SymmetricWindowMapsOntoInitialSegment) {
  const auto z = IndexSpace::integers();
  for (int n = 0; n < 30; ++n) {
    std::set<int> ords;
    for (int i : z.window(n)) ords.insert(z.ord(i));
    ASSERT_EQ(static_cast<int>(ords.size()), 2 * n + 1);
    EXPECT_EQ(*ords.begin(), 1);
    EXPECT_EQ(*ords.rbegin(), 2 * n + 1);
  }
  const auto w = z.window(2);
  EXPECT_EQ(w, (std::vector<int>{-2, -1, 0, 1, 2}));
  EXPECT_EQ(z.position(-2, 2), 0);
  EXPECT_EQ(z.position(3, 2), -1);
}

TEST(IndexSpace, NaturalWindow) {
  const auto n = IndexSpace::naturals();
  EXPECT_EQ(n.window(3), (std::vector<int>{1, 2, 3}));
  EXPECT_THROW(n.ord(0), Error);
  EXPECT_THROW(n.window(0), Error);
}

TEST(DomainRegion, BoundaryDistanceIsLipschitzAndPositiveInside) {
  std::mt19937_64 rng(11);
  const std::vector<DomainRegion> regions = {
      DomainRegion::whole_plane(), DomainRegion::punctured_plane({0.0, 0.5}, {0.0, -1.0}),
      DomainRegion::open_disk({0.5, -0.25}, 1.5), DomainRegion::slit_plane(0.0, {1.0, 0.0})};
  for (const auto& region : regions) {
    EXPECT_TRUE(region.contains(region.base_point()));
    for (int k = 0; k < 2000; ++k) {
      const Complex x = oracle::random_point(rng, -3, 3, -3, 3);
      const Complex y = oracle::random_point(rng, -3, 3, -3, 3);
      const double dx = region.boundary_dist(x);
      const double dy = region.boundary_dist(y);
      EXPECT_EQ(dx > 0.0, region.contains(x));
      if (std::isfinite(dx) && std::isfinite(dy)) {
        EXPECT_LE(std::abs(dx - dy), std::abs(x - y) + 1e-14);
      }
    }
  }
}

TEST(DomainRegion, ExcludedPoints) {
  EXPECT_FALSE(DomainRegion::punctured_plane({0.0, 0.5}, {0.0, -1.0}).contains({0.0, 0.5}));
  EXPECT_FALSE(DomainRegion::slit_plane(0.0, {1.0, 0.0}).contains({-2.0, 0.0}));
  EXPECT_TRUE(DomainRegion::slit_plane(0.0, {1.0, 0.0}).contains({-2.0, 1e-9}));
  EXPECT_FALSE(DomainRegion::open_disk({0.0, 0.0}, 1.0).contains({1.0, 0.0}));
  EXPECT_EQ(DomainRegion::whole_plane().metric_weight({3.0, 4.0}), 1.0);
}

TEST(Grid, CornerLattice) {
  const auto g = grid_generate(DomainRegion::whole_plane(), Rect{0, 1, 0, 1}, 1, 1.0);
  const std::vector<Complex> expected = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  EXPECT_EQ(g.points, expected);
  EXPECT_EQ(g.level, 1);
  EXPECT_EQ(g.pitch, 1.0);
}

TEST(Grid, PuncturedPlaneNeverContainsHole) {
  const auto region = DomainRegion::punctured_plane({0.0, 0.0}, {1.0, 0.0});
  for (int n = 1; n <= 16; ++n) {
    const auto g = grid_generate(region, Rect{-1, 1, -1, 1}, n);
    for (const auto& z : g.points) EXPECT_NE(z, Complex(0.0, 0.0));
  }
}

TEST(Grid, NestedDenseAndInsideDomain) {
  const auto region = DomainRegion::open_disk({0.0, 0.0}, 1.7);
  const Rect box{-2, 2, -1.5, 1.25};
  SamplingGrid prev = grid_generate(region, box, 1);
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 40; ++n) {
    const auto g = grid_generate(region, box, n);
    const std::set<std::pair<double, double>> pts = [&] {
      std::set<std::pair<double, double>> s;
      for (const auto& z : g.points) s.insert({z.real(), z.imag()});
      return s;
    }();
    for (const auto& z : prev.points) EXPECT_TRUE(pts.count({z.real(), z.imag()})) << "n=" << n;
    for (const auto& z : g.points) {
      EXPECT_TRUE(region.contains(z));
      EXPECT_TRUE(box.contains(z));
      EXPECT_EQ(std::ldexp(z.real(), 10), std::round(std::ldexp(z.real(), 10)));  // dyadic
    }
    // Density on the compact disk of radius 1: within one pitch.
    for (int k = 0; k < 50; ++k) {
      const Complex w = std::polar(std::sqrt(std::uniform_real_distribution<>(0, 1)(rng)) * 1.0,
                                   std::uniform_real_distribution<>(0, 6.283)(rng));
      double best = 1e9;
      for (const auto& z : g.points) best = std::min(best, std::abs(z - w));
      EXPECT_LE(best, g.pitch);
    }
    prev = g;
  }
}

TEST(Grid, EmptyResultAndErrors) {
  const auto g = grid_generate(DomainRegion::whole_plane(), Rect{0.1, 0.2, 0.1, 0.2}, 1);
  EXPECT_TRUE(g.points.empty());
  EXPECT_THROW(grid_generate(DomainRegion::whole_plane(), Rect{0, 0, 0, 1}, 1), Error);
  EXPECT_THROW(grid_generate(DomainRegion::whole_plane(), Rect{0, 1, 0, 1}, 0), Error);
  EXPECT_THROW(grid_generate(DomainRegion::whole_plane(), Rect{0, 1, 0, 1}, 1, 0.3), Error);
}

TEST(Assemble, ShiftAtZero) {
  const auto shift = pencils::make_shift(pencils::shift_identity);
  const Matrix m = assemble_truncation(*shift, 0.0, {2, 1}, Operand::pencil);
  ASSERT_EQ(m.rows(), 5);
  ASSERT_EQ(m.cols(), 3);
  // rows e_{-2..2}, cols e_{-1..1}; S e_j = e_{j+1}
  Matrix expected = Matrix::Zero(5, 3);
  expected(2, 0) = 1.0;
  expected(3, 1) = 1.0;
  expected(4, 2) = 1.0;
  EXPECT_EQ(m, expected);
}

TEST(Assemble, IdentityRectangle) {
  const Matrix m = assemble_truncation(*identity_pencil(), {0.3, -2.0}, {3, 2}, Operand::pencil);
  Matrix expected = Matrix::Zero(3, 2);
  expected(0, 0) = expected(1, 1) = 1.0;
  EXPECT_EQ(m, expected);
}

TEST(Assemble, KleinGordonAtZero) {
  const auto kg = pencils::make_klein_gordon();
  const Matrix m = assemble_truncation(*kg, 0.0, {1, 1}, Operand::pencil);
  // H0 on e_{-1}, e_0, e_1: diagonal 2, (H0)_{-1,0} = 1/2 (odd left index), (H0)_{0,1} = 3/2.
  const double v0 = -5.0;
  const double v1 = -5.0 * std::exp(-1.0);
  Matrix expected(3, 3);
  expected << 2.0 - v1 * v1, 0.5, 0.0,
              0.5, 2.0 - v0 * v0, 1.5,
              0.0, 1.5, 2.0 - v1 * v1;
  EXPECT_LE((m - expected).norm(), 1e-14);
}

TEST(Assemble, ErrorsCarryContext) {
  const auto acoustic = pencils::make_acoustic_wave(16);
  EXPECT_THROW(assemble_truncation(*acoustic, {0.0, 0.5}, {4, 3}, Operand::pencil), Error);
  try {
    assemble_truncation(*acoustic, 1.0, {40, 32}, Operand::pencil);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::window_exceeds_capacity);
  }
  const auto bad = std::make_shared<FunctionPencil>("bad", IndexSpace::naturals(), IndexSpace::naturals(),
                                                    [](Complex, int i, int j) {
                                                      return (i == 2 && j == 3) ? Complex(NAN, 0) : Complex(1.0);
                                                    });
  try {
    assemble_truncation(*bad, 0.0, {4, 4}, Operand::pencil);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::oracle_evaluation);
    EXPECT_NE(std::string(e.what()).find("(2,3)"), std::string::npos);
  }
  const auto throwing = std::make_shared<FunctionPencil>("throwing", IndexSpace::naturals(), IndexSpace::naturals(),
                                                         [](Complex, int, int) -> Complex { throw std::runtime_error("boom"); });
  try {
    assemble_truncation(*throwing, 0.0, {2, 2}, Operand::pencil);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::oracle_evaluation);
  }
}

namespace {

struct Sampled {
  const char* label;
  PencilPtr pencil;
  std::vector<Complex> points;
  int n;
};

std::vector<Sampled> built_in() {
  return {
      {"shift", pencils::make_shift(pencils::shift_rings, "rings"), {{0.3, 0.2}, {-1.1, 0.7}}, 6},
      {"klein_gordon", pencils::make_klein_gordon(), {{0.4, 0.1}, {-1.7, -0.3}}, 6},
      {"acoustic_wave", pencils::make_acoustic_wave(32), {{1.0, 0.7}, {-2.0, -0.4}}, 12},
      {"fractional_beam", pencils::make_fractional_beam(1.5, 16), {{1.0, 1.0}, {-0.5, 2.0}}, 10},
      {"predator_prey", pencils::make_predator_prey(0.5, 16), {{-0.3, 1.0}, {0.2, -2.0}}, 10},
  };
}

}  // namespace

// Sequence-space pencils use conj(entry(z, j, i)); function-space pencils
// discretize the adjoint in its own basis and are checked by Green's identity
// in the pencil tests.
TEST(Pencils, AdjointConsistencyOnOverlappingWindows) {
  auto all = built_in();
  all.push_back({"identity", identity_pencil(), {{0.1, 0.1}}, 5});
  for (const auto& s : all) {
    const std::string label = s.label;
    if (label != "shift" && label != "klein_gordon" && label != "identity") continue;
    for (const Complex z : s.points) {
      const Matrix fwd = assemble_truncation(*s.pencil, z, {s.n + 1, s.n}, Operand::pencil);
      const Matrix adj = assemble_truncation(*s.pencil, z, {s.n, s.n + 1}, Operand::adjoint);
      ASSERT_EQ(adj.rows(), fwd.cols());
      ASSERT_EQ(adj.cols(), fwd.rows());
      EXPECT_LE((adj - fwd.adjoint()).norm(), 1e-12 * (1.0 + fwd.norm())) << s.label;
      // Entry-level access agrees with block assembly.
      const auto rows = s.pencil->row_space().window(s.n + 1);
      const auto cols = s.pencil->col_space().window(s.n);
      for (std::size_t a = 0; a < rows.size(); a += 3)
        for (std::size_t b = 0; b < cols.size(); b += 2) {
          const auto ai = static_cast<Eigen::Index>(a);
          const auto bi = static_cast<Eigen::Index>(b);
          EXPECT_LE(std::abs(s.pencil->entry(z, rows[a], cols[b]) - fwd(ai, bi)), 1e-12 * (1.0 + fwd.norm())) << s.label;
          EXPECT_LE(std::abs(s.pencil->adjoint_entry(z, cols[b], rows[a]) - std::conj(fwd(ai, bi))),
                    1e-12 * (1.0 + fwd.norm()))
              << s.label;
        }
    }
  }
}

TEST(Pencils, DeclaredBandIsExact) {
  std::mt19937_64 rng(5);
  for (const auto& s : built_in()) {
    const auto b = s.pencil->band();
    if (!b) continue;
    const auto rs = s.pencil->row_space();
    const auto cs = s.pencil->col_space();
    for (int trial = 0; trial < 300; ++trial) {
      const Complex z = oracle::random_point(rng, -2, 2, -1, 2);
      if (!s.pencil->domain().contains(z)) continue;
      const int j = cs.from_ord(std::uniform_int_distribution<>(1, 12)(rng));
      const int i = rs.from_ord(std::uniform_int_distribution<>(1, 30)(rng));
      if (rs.level(i) > cs.level(j) + *b) {
        EXPECT_EQ(s.pencil->entry(z, i, j), Complex(0.0)) << s.label << " i=" << i << " j=" << j;
        EXPECT_EQ(s.pencil->adjoint_entry(z, i, j), Complex(0.0)) << s.label;
      }
    }
  }
}

TEST(Pencils, EntriesAreDeterministic) {
  for (const auto& s : built_in()) {
    const Matrix a = assemble_truncation(*s.pencil, s.points[0], {s.n, s.n}, Operand::pencil);
    const Matrix b = assemble_truncation(*s.pencil, s.points[0], {s.n, s.n}, Operand::pencil);
    EXPECT_EQ(a, b) << s.label;
  }
}

TEST(Pencils, GramIsHermitianPsd) {
  const auto kg = pencils::make_klein_gordon();
  ASSERT_EQ(kg->capability(), Capability::lambda2);
  const Complex z(0.7, 0.2);
  for (Operand which : {Operand::pencil, Operand::adjoint}) {
    const Matrix g = kg->gram_block(z, 8, which);
    EXPECT_LE((g - g.adjoint()).norm(), 1e-12);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(g);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-12);
  }
  EXPECT_EQ(*kg->gram_cols(z, 1, -1), kg->gram_block(z, 1, Operand::pencil)(2, 0));
  EXPECT_FALSE(pencils::make_fractional_beam(1.0, 8)->gram_cols(z, 1, 1).has_value());
}

TEST(Parallel, PoolVisitsEveryIndexOnceAndRethrows) {
  std::vector<int> hits(1000, 0);
  thread_pool_for(4)(hits.size(), [&](std::size_t k) { ++hits[k]; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(thread_pool_for(4)(100, [](std::size_t k) { if (k == 37) throw Error(ErrorCode::non_finite, "x"); }),
               Error);
}
