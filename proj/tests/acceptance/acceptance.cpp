// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "nlspec/nlspec.hpp"
#include "support/oracles.hpp"

using namespace nlspec;

namespace {

struct Outcome {
  bool pass = false;
  std::vector<std::string> details;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ParallelFor pool() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return thread_pool_for(workers_from_env(std::min(hw, 8u)));
}

struct KleinGordonFixtures {
  std::vector<Complex> spurious;
  std::vector<Complex> targets;
};

KleinGordonFixtures load_fixtures() {
  std::ifstream in(std::string(NLSPEC_FIXTURE_DIR) + "/klein_gordon.json");
  if (!in) throw Error(ErrorCode::io, "missing fixture klein_gordon.json");
  const auto j = nlohmann::json::parse(in);
  KleinGordonFixtures f;
  for (const auto& p : j.at("spurious")) f.spurious.emplace_back(p.at("re").get<double>(), p.at("im").get<double>());
  for (const auto& p : j.at("targets")) f.targets.emplace_back(p.at("re").get<double>(), p.at("im").get<double>());
  return f;
}

// 1. Shift pencil with f(z) = sin(4z)(|z|^2 + 1) against the closed form ||f| - 1|.
Outcome shift_closed_form() {
  Outcome out;
  const auto shift = pencils::make_shift(pencils::shift_rings, "rings");

  // Validate the closed form at n2 = 1000 first (20 random points with ||f| - 1| <= 1).
  std::mt19937_64 rng(1001);
  std::vector<Complex> probes;
  while (probes.size() < 20) {
    const Complex z = oracle::random_point(rng, -4, 4, -2, 2);
    if (std::abs(std::abs(pencils::shift_rings(z)) - 1.0) <= 1.0) probes.push_back(z);
  }
  std::vector<double> probe_err(probes.size());
  pool()(probes.size(), [&](std::size_t k) {
    const Complex fz = pencils::shift_rings(probes[k]);
    probe_err[k] = std::abs(gamma_band_exact(*shift, probes[k], 1000, default_tol(1000)).center - oracle::shift_symbol_min(fz));
  });
  int probe_fail = 0;
  double probe_worst = 0.0;
  for (double e : probe_err) {
    probe_fail += e > 1e-6;
    probe_worst = std::max(probe_worst, e);
  }
  out.details.push_back(fmt("closed-form validation at n2=1000: %d/20 points above 1e-6 (worst %.3g)", probe_fail, probe_worst));

  // 161 x 81 grid over [-4,4] x [-2,2].
  std::vector<Complex> pts;
  for (int b = 0; b < 81; ++b)
    for (int a = 0; a < 161; ++a) pts.emplace_back(-4.0 + 0.05 * a, -2.0 + 0.05 * b);
  std::vector<double> value_err(pts.size(), -1.0), center_err(pts.size(), -1.0);
  pool()(pts.size(), [&](std::size_t k) {
    const double exact = std::abs(std::abs(pencils::shift_rings(pts[k])) - 1.0);
    if (exact > 1.0) return;
    const auto g = gamma_band_exact(*shift, pts[k], 100, default_tol(100));
    value_err[k] = std::abs(g.value - exact);
    center_err[k] = std::abs(g.center - exact);
  });
  int checked = 0, fail_value = 0, fail_center = 0;
  double worst = 0.0, worst_center = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (value_err[k] < 0) continue;
    ++checked;
    fail_value += value_err[k] > 5e-3;
    fail_center += center_err[k] > 5e-3;
    worst = std::max(worst, value_err[k]);
    worst_center = std::max(worst_center, center_err[k]);
  }
  out.details.push_back(fmt("grid: %d points checked, %d above 5e-3 (worst %.3g); raw singular value: %d above (worst %.3g)",
                            checked, fail_value, worst, fail_center, worst_center));
  out.details.push_back(fmt("window floor at |f|=1: 2 sin(pi/204) = %.4f", 2 * std::sin(M_PI / 204)));
  out.pass = probe_fail == 0 && fail_value == 0;
  return out;
}

// 2. gamma_rect nondecreasing in n1, gamma_band_exact nonincreasing in n2.
Outcome monotonicity() {
  Outcome out;
  const PencilPtr ps[] = {pencils::make_shift(pencils::shift_rings, "rings"), pencils::make_klein_gordon()};
  std::mt19937_64 rng(2002);
  struct Triple {
    int pencil;
    Complex z;
    int n2;
  };
  std::vector<Triple> triples;
  for (int k = 0; k < 200; ++k)
    triples.push_back({k % 2, oracle::random_point(rng, -3, 3, -2, 2), std::uniform_int_distribution<>(2, 60)(rng)});
  std::vector<int> rect_bad(triples.size()), band_bad(triples.size());
  pool()(triples.size(), [&](std::size_t k) {
    const auto& t = triples[k];
    const auto& p = *ps[t.pencil];
    const double tol = default_tol(t.n2);
    double prev = -INFINITY;
    for (int n1 : {t.n2, t.n2 + 1, t.n2 + 2, t.n2 + 5, 2 * t.n2, 4 * t.n2}) {
      const double g = gamma_rect(p, t.z, t.n2, n1, tol).value;
      rect_bad[k] += g < prev - 2 * tol;
      prev = std::max(prev, g);
    }
    double above = INFINITY;
    for (int n2 : {t.n2, t.n2 + 1, t.n2 + 2, t.n2 + 7, 2 * t.n2}) {
      const double g = gamma_band_exact(p, t.z, n2, tol).value;
      band_bad[k] += g > above + 2 * tol;
      above = std::min(above, g);
    }
  });
  int rv = 0, bv = 0;
  for (std::size_t k = 0; k < triples.size(); ++k) {
    rv += rect_bad[k];
    bv += band_bad[k];
  }
  out.details.push_back(fmt("200 triples: %d rect-in-n1 violations, %d band-in-n2 violations", rv, bv));
  out.pass = rv == 0 && bv == 0;
  return out;
}

// 3. sigma(B) <= sigma(A) + 2 d s / (1 - d s), s = sqrt(1 + sigma(A)^2), d = graph gap.
Outcome perturbation_bound() {
  Outcome out;
  std::mt19937_64 rng(3003);
  int pairs = 0, violations = 0, drawn = 0, loose_violations = 0;
  double tightest = INFINITY, worst_sigma = 0.0;
  while (pairs < 1000) {
    ++drawn;
    const int k = std::uniform_int_distribution<>(1, 6)(rng);
    const int m = k + std::uniform_int_distribution<>(0, 4)(rng);
    const Matrix a = oracle::random_matrix(rng, m, k);
    const double scale = std::pow(10.0, std::uniform_real_distribution<>(-7, 0)(rng));
    const Matrix b = a + oracle::random_matrix(rng, m, k, scale);
    const double sa = sigma_inf(a, 1e-14, Side::lower).center;
    const double sb = sigma_inf(b, 1e-14, Side::lower).center;
    const double d = graph_gap(a, b);
    const double ds = d * std::sqrt(1.0 + sa * sa);
    if (!(ds < 1.0)) continue;
    ++pairs;
    const double bound = sa + 2.0 * ds / (1.0 - ds);
    if (sb > bound + 1e-8) {
      ++violations;
      worst_sigma = std::max(worst_sigma, sa);
    }
    // (sigma + d s) / (1 - d s): the bound before the final simplification.
    if (sb > (sa + ds) / (1.0 - ds) + 1e-8) ++loose_violations;
    tightest = std::min(tightest, bound - sb);
  }
  out.details.push_back(fmt("%d qualifying pairs (%d drawn), %d violations, smallest margin %.3g", pairs, drawn,
                            violations, tightest));
  if (violations > 0) out.details.push_back(fmt("violations at sigma(A) up to %.4f (> sqrt 3)", worst_sigma));
  out.details.push_back(fmt("(sigma + d s)/(1 - d s) form: %d violations", loose_violations));
  out.pass = violations == 0;
  return out;
}

// 4. Klein-Gordon: essential spectrum accepted, spurious finite-section eigenvalues rejected.
Outcome klein_gordon_pollution(const KleinGordonFixtures& fx) {
  Outcome out;
  const auto kg = pencils::make_klein_gordon();
  // Fixtures must be reproducible from the finite section.
  const auto eigs = pencils::klein_gordon_finite_section(100).eigenvalues;
  bool reproduced = fx.spurious.size() == 2;
  for (const auto& s : fx.spurious) {
    double best = INFINITY;
    for (const auto& e : eigs) best = std::min(best, std::abs(e - s));
    reproduced = reproduced && best < 1e-8;
  }
  out.details.push_back(std::string("spurious fixtures regenerated from the n=100 finite section: ") +
                        (reproduced ? "yes" : "NO"));

  std::vector<double> ess(50);
  pool()(ess.size(), [&](std::size_t k) {
    const double x = -0.95 + 1.9 * static_cast<double>(k) / 49.0;
    ess[k] = gamma_band_exact(*kg, x, 400, default_tol(400)).value;
  });
  const double ess_max = *std::max_element(ess.begin(), ess.end());
  double spur_min = INFINITY;
  for (const auto& s : fx.spurious) {
    const auto g = gamma_band_exact(*kg, s, 400, default_tol(400));
    spur_min = std::min(spur_min, g.lower_bound());
    out.details.push_back(fmt("spurious %s: gamma_400 = %.4f (lower bound %.4f)", format_complex(s).c_str(), g.value,
                              g.lower_bound()));
  }
  out.details.push_back(fmt("essential spectrum: max gamma_400 over 50 points = %.3g (< 0.02 required)", ess_max));
  out.pass = reproduced && ess_max < 0.02 && spur_min > 10.0 * ess_max;
  return out;
}

// 5. Klein-Gordon eigenvalue localization: gamma minima drop >= 6 orders from n2=25 to 400.
Outcome klein_gordon_localization(const KleinGordonFixtures& fx) {
  Outcome out;
  const auto kg = pencils::make_klein_gordon();
  LocalizeOptions opt;
  opt.settings.mode = GammaMode::band;
  opt.n2_schedule = {25, 50, 100, 200, 400};
  opt.radius = 1e-2;
  opt.accuracy = 1e-13;
  opt.max_steps = 400;
  std::vector<LocalizeResult> results(fx.targets.size());
  pool()(fx.targets.size(), [&](std::size_t k) { results[k] = localize_eigenvalue(*kg, fx.targets[k], opt); });
  bool ok = fx.targets.size() == 3;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& h = results[k].history;
    const double drop = std::log10(h.front().gamma / std::max(h.back().gamma, 1e-300));
    std::string curve;
    for (const auto& l : h) curve += fmt(" %.2e", l.gamma);
    out.details.push_back(fmt("target %s -> %s: gamma min history%s (%.1f orders)", format_complex(fx.targets[k]).c_str(),
                              format_complex(results[k].z).c_str(), curve.c_str(), drop));
    ok = ok && drop >= 6.0;
  }
  out.pass = ok;
  return out;
}

// 6. Acoustic wave: upper half-plane spectrum and pseudoeigenfunction flatness.
Outcome acoustic_half_plane() {
  Outcome out;
  const auto acoustic = pencils::make_acoustic_wave(256);
  const auto grid = grid_generate(acoustic->domain(), Rect{-3 * M_PI, 3 * M_PI, -3, 3}, 150, 64.0);
  GammaSettings s;
  s.mode = GammaMode::band;
  s.n2 = 150;
  const auto field = gamma_field(*acoustic, grid, s, pool());
  int upper_n = 0, upper_bad = 0, lower_n = 0, lower_bad = 0;
  double upper_worst = 0.0, lower_worst = INFINITY, nearest_bad = INFINITY;
  Complex upper_at;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Complex z = grid.points[k];
    const auto& g = field.values[k];
    if (z.imag() >= 0.2) {
      ++upper_n;
      if (!(g.value < 0.05)) {
        ++upper_bad;
        nearest_bad = std::min(nearest_bad, std::abs(z));
      }
      if (g.value > upper_worst) {
        upper_worst = g.value;
        upper_at = z;
      }
    } else if (z.imag() <= -0.5) {
      ++lower_n;
      lower_bad += !(g.lower_bound() > 0.2);
      lower_worst = std::min(lower_worst, g.lower_bound());
    }
  }
  out.details.push_back(fmt("grid pitch %g: Im z >= 0.2: %d/%d points with gamma >= 0.05 (worst %.4f at %s)", grid.pitch,
                            upper_bad, upper_n, upper_worst, format_complex(upper_at).c_str()));
  if (upper_bad > 0) out.details.push_back(fmt("smallest |z| among those points: %.3f", nearest_bad));
  out.details.push_back(fmt("Im z <= -0.5: %d/%d points with gamma <= 0.2 (smallest lower bound %.4f)", lower_bad, lower_n,
                            lower_worst));

  const Complex z(2 * M_PI, 1.0);
  std::vector<double> mesh(401);
  for (int k = 0; k <= 400; ++k) mesh[static_cast<std::size_t>(k)] = 10.0 * k / 400.0;
  std::vector<Complex> reference(mesh.size());
  for (std::size_t k = 0; k < mesh.size(); ++k) reference[k] = std::exp(Complex(0.0, 1.0) * z * mesh[k]);
  std::vector<double> flat;
  for (int n2 : {40, 80, 160}) {
    GammaSettings ps;
    ps.mode = GammaMode::band;
    ps.n2 = n2;
    const auto pf = pseudoeigenfunction(*acoustic, z, ps);
    const auto u = acoustic->evaluate_columns(z, pf.coefficients, mesh);
    std::vector<Complex> vals(mesh.size());
    for (std::size_t k = 0; k < mesh.size(); ++k) vals[k] = (*u)(static_cast<Eigen::Index>(k), 0);
    flat.push_back(ratio_flatness(vals, reference));
  }
  out.details.push_back(fmt("pseudoeigenfunction flatness at n2 = 40, 80, 160: %.4f %.4f %.4f", flat[0], flat[1], flat[2]));
  const bool flat_ok = flat[2] < 0.05 && flat[1] < flat[0] && flat[2] < flat[1];
  out.pass = upper_bad == 0 && lower_bad == 0 && flat_ok;
  return out;
}

// 7. Finite-section failure: odd shift truncations are singular; FEM eigenvalues drift.
Outcome finite_section_failure() {
  Outcome out;
  const auto shift = pencils::make_shift(pencils::shift_identity);
  std::mt19937_64 rng(7007);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Complex z = oracle::random_point(rng, -1.5, 1.5, -1.5, 1.5);
    const Matrix t = assemble_truncation(*shift, z, {20, 20}, Operand::pencil);
    const Vector u = pencils::shift_odd_null_vector(z, 20);
    worst = std::max(worst, (t * u).norm() / u.norm());
  }
  out.details.push_back(fmt("odd truncation (dim 41): max ||T u|| / ||u|| over 20 z = %.3g", worst));
  const double m10 = pencils::acoustic_fem_min_modulus(10);
  const double m100 = pencils::acoustic_fem_min_modulus(100);
  const double m500 = pencils::acoustic_fem_min_modulus(500);
  const double inc_ratio = (m500 - m100) / (m100 - m10);
  const double log_ratio = std::log(500.0 / 100.0) / std::log(100.0 / 10.0);
  const double factor = inc_ratio / log_ratio;
  out.details.push_back(fmt("FEM min |eigenvalue|: n=10 %.4f, n=100 %.4f, n=500 %.4f; increment ratio %.3f vs log ratio %.3f",
                            m10, m100, m500, inc_ratio, log_ratio));
  out.pass = worst <= 1e-10 && m10 < m100 && m100 < m500 && factor <= 3.0 && factor >= 1.0 / 3.0;
  return out;
}

// 8. Predator-prey: stable for r2 = 0.5, unstable for r2 = 100.
Outcome predator_prey_split() {
  Outcome out;
  bool ok = true;
  for (double r2 : {0.5, 100.0}) {
    pencils::PredatorPreyParams p;
    p.r2 = r2;
    const auto coarse = pencils::solve_steady_state(p, 64);
    const auto fine = pencils::solve_steady_state(p, 128);
    const RealVector fu = pencils::chebyshev_interpolate(fine.nodes, fine.u, coarse.nodes);
    const RealVector fv = pencils::chebyshev_interpolate(fine.nodes, fine.v, coarse.nodes);
    const double diff = std::max((fu - coarse.u).cwiseAbs().maxCoeff(), (fv - coarse.v).cwiseAbs().maxCoeff());
    ok = ok && diff < 1e-8;

    const auto pencil = pencils::make_predator_prey(r2, 64);
    const auto grid = grid_generate(pencil->domain(), Rect{-1.5, 0.5, -8, 8}, 64, 4.0);
    GammaSettings s;
    s.mode = GammaMode::rect;
    s.n2 = 64;
    s.n1 = 128;
    const auto set = spectrum(*pencil, grid, 20, s, pool());
    int right = 0;
    double rightmost = -INFINITY;
    for (const auto& z : set.points) {
      right += z.real() > 0.02;
      rightmost = std::max(rightmost, z.real());
    }
    out.details.push_back(fmt("r2=%g: steady state M=64 vs 128 sup diff %.2g; %zu grid points, %zu accepted, %d with Re > 0.02 (rightmost Re %.4f)",
                              r2, diff, grid.size(), set.points.size(), right, rightmost));
    ok = ok && (r2 < 1.0 ? right == 0 : right >= 1);
  }
  out.pass = ok;
  return out;
}

// 9. Attouch-Wets distance from spectrum outputs to the unit circle shrinks with the tower level.
Outcome attouch_wets_diagnostic() {
  Outcome out;
  const auto shift = pencils::make_shift(pencils::shift_identity);
  const Rect box{0.75, 1.25, -0.25, 0.25};
  std::vector<Complex> circle;
  for (int k = -1000; k <= 1000; ++k) {
    const Complex c = std::polar(1.0, 0.3 * k / 1000.0);
    if (box.contains(c)) circle.push_back(c);
  }
  const MetricContext ctx(DomainRegion::whole_plane(), 1.0 / 512, box);
  std::vector<AttouchWets> d;
  for (int k : {3, 4, 5}) {
    GammaSettings s;
    s.mode = GammaMode::band;
    s.n2 = 8 << k;
    const auto grid = grid_generate(shift->domain(), box, s.n2, 1.0);
    const auto set = spectrum(*shift, grid, 1 << k, s, pool());
    if (set.empty()) {
      out.details.push_back(fmt("level %d: empty spectrum output", k));
      out.pass = false;
      return out;
    }
    d.push_back(attouch_wets(ctx, set.points, circle));
    out.details.push_back(fmt("level %d (n3=%d, n2=%d, pitch %g): %zu points, d_AW = %.5f (certificate %.1e), Hausdorff %.5f",
                              k, 1 << k, s.n2, grid.pitch, set.points.size(), d.back().value, d.back().certificate,
                              oracle::hausdorff(set.points, circle)));
  }
  out.pass = d[1].truncated <= d[0].value && d[2].truncated <= d[1].value;
  return out;
}

}  // namespace

int main() {
  const KleinGordonFixtures fx = load_fixtures();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"shift closed form", shift_closed_form},
      {"monotonicity", monotonicity},
      {"perturbation bound", perturbation_bound},
      {"klein-gordon anti-pollution", [&] { return klein_gordon_pollution(fx); }},
      {"klein-gordon localization", [&] { return klein_gordon_localization(fx); }},
      {"acoustic half-plane", acoustic_half_plane},
      {"finite-section failure", finite_section_failure},
      {"predator-prey stability", predator_prey_split},
      {"attouch-wets diagnostic", attouch_wets_diagnostic},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.details.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %s: %s (%.1f s)\n", k + 1, criteria[k].first.c_str(), o.pass ? "PASS" : "FAIL", secs);
    for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
