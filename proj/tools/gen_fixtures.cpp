// Regenerates tests/fixtures/klein_gordon.json from the finite-section
// eigenvalues of the Klein-Gordon pencil.
//
//   spurious:  real finite-section eigenvalues outside [-1, 1] whose
//              gamma_400 exceeds 0.05 (the true operator is far from singular)
//   targets:   the three genuine eigenvalues (gamma_400 < 1e-10) with the
//              largest gamma_25, i.e. the slowest to converge in n2

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlspec/nlspec.hpp"

int main(int argc, char** argv) {
  const std::string out_path = argc > 1 ? argv[1] : "tests/fixtures/klein_gordon.json";
  constexpr int kSection = 100;
  constexpr int kFine = 400;
  constexpr int kCoarse = 25;

  const auto pencil = nlspec::pencils::make_klein_gordon();
  const auto eigs = nlspec::pencils::klein_gordon_finite_section(kSection).eigenvalues;

  struct Candidate {
    nlspec::Complex z;
    double fine = 0.0;
    double coarse = 0.0;
  };
  std::vector<Candidate> all(eigs.size());
  nlspec::thread_pool_for(nlspec::workers_from_env(8))(eigs.size(), [&](std::size_t k) {
    all[k].z = eigs[k];
    all[k].fine = nlspec::gamma_band_exact(*pencil, eigs[k], kFine, nlspec::default_tol(kFine)).center;
    all[k].coarse = nlspec::gamma_band_exact(*pencil, eigs[k], kCoarse, nlspec::default_tol(kCoarse)).center;
  });

  std::vector<Candidate> spurious;
  std::vector<Candidate> genuine;
  for (const auto& c : all) {
    const bool real = std::abs(c.z.imag()) < 1e-8;
    if (real && std::abs(c.z.real()) > 1.0 && c.fine > 0.05) spurious.push_back(c);
    if (c.fine < 1e-10) genuine.push_back(c);
  }
  auto by_re = [](const Candidate& a, const Candidate& b) {
    return a.z.real() != b.z.real() ? a.z.real() < b.z.real() : a.z.imag() < b.z.imag();
  };
  std::sort(spurious.begin(), spurious.end(), by_re);
  std::sort(genuine.begin(), genuine.end(), [](const Candidate& a, const Candidate& b) { return a.coarse > b.coarse; });
  if (genuine.size() > 3) genuine.resize(3);
  std::sort(genuine.begin(), genuine.end(), by_re);

  auto dump = [](const std::vector<Candidate>& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : v)
      arr.push_back({{"re", c.z.real()}, {"im", c.z.imag()}, {"gamma_25", c.coarse}, {"gamma_400", c.fine}});
    return arr;
  };
  nlohmann::ordered_json j;
  j["generator"] = "tools/gen_fixtures";
  j["finite_section_n"] = kSection;
  j["finite_section_count"] = eigs.size();
  j["spurious_rule"] = "real finite-section eigenvalues with |z| > 1 and gamma_400 > 0.05";
  j["target_rule"] = "three eigenvalues with gamma_400 < 1e-10 and the largest gamma_25";
  j["spurious"] = dump(spurious);
  j["targets"] = dump(genuine);

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 1;
  }
  out << j.dump(2) << "\n";
  std::cout << "wrote " << spurious.size() << " spurious, " << genuine.size() << " targets to " << out_path << "\n";
  return 0;
}
