// Library usage: gamma field and pseudospectra of the shift pencil with
// f(z) = z, whose spectrum is the unit circle.

#include <cstdio>

#include "nlspec/nlspec.hpp"

int main() {
  using namespace nlspec;
  const auto pencil = pencils::make_shift(pencils::shift_identity, "identity");

  GammaSettings settings;
  settings.mode = GammaMode::band;
  settings.n2 = 256;

  const auto grid = grid_generate(pencil->domain(), Rect{-1.5, 1.5, -1.5, 1.5}, 64, 4.0);
  const auto field = gamma_field(*pencil, grid, settings, thread_pool_for(workers_from_env(4)));

  double worst = 0.0;
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    const double exact = std::abs(std::abs(grid.points[k]) - 1.0);
    worst = std::max(worst, std::abs(field.values[k].value - exact));
  }
  std::printf("%zu grid points, pitch %g, max |gamma - ||z|-1|| = %.3g\n", grid.size(), grid.pitch, worst);

  for (const double eps : {0.5, 0.25, 0.1}) {
    const auto set = pseudospectrum(field, eps);
    std::printf("eps = %-5g  %zu points accepted\n", eps, set.points.size());
  }
  const auto sp = spectrum(field, 20);
  std::printf("spectrum (n3 = 20): %zu points\n", sp.points.size());
  return 0;
}
