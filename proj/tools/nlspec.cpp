// Command-line front end: gamma fields, pseudospectra, spectra, eigenvalue
// localization and pseudoeigenfunctions for the built-in pencils.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlspec/io/commands.hpp"

namespace {

using nlspec::Error;
using nlspec::ErrorCode;
using nlspec::io::Command;
using nlspec::io::Json;
using nlspec::io::RunConfig;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

// Flag values are collected into a JSON overlay and applied on top of the
// config file, so both paths share one parser.
struct Flags {
  std::string config;
  std::string pencil, shift_f, mode, format, output;
  double nu = 0, r2 = 0, initial_pitch = 0, tol = 0, radius = 0, shrink = 0, accuracy = 0;
  double mesh_start = 0, mesh_stop = 0;
  int capacity = 0, grid_level = 0, n2 = 0, n1 = 0, n1_max = 0, n3 = 0, max_steps = 0, mesh_count = 0;
  unsigned workers = 0;
  bool n1_auto = false;
  std::vector<double> bbox, epsilons, seed, z;
  std::vector<int> n2_schedule;
};

void add_flags(CLI::App& app, Flags& f, Command cmd) {
  app.add_option("--config", f.config, "JSON config file; flags override its values")->check(CLI::ExistingFile);
  app.add_option("--pencil", f.pencil, "shift | klein_gordon | acoustic_wave | fractional_beam | predator_prey");
  app.add_option("--shift-f", f.shift_f, "shift symbol: identity | rings");
  app.add_option("--nu", f.nu, "fractional beam exponent in (0, 2)");
  app.add_option("--r2", f.r2, "predator-prey prey growth rate");
  app.add_option("--capacity", f.capacity, "basis capacity for function-space pencils");
  app.add_option("--mode", f.mode, "rect | band | gram");
  app.add_option("--n2", f.n2, "column truncation");
  app.add_option("--n1", f.n1, "row truncation (rect mode)");
  app.add_flag("--n1-auto", f.n1_auto, "rect mode: double n1 until gamma stagnates");
  app.add_option("--n1-max", f.n1_max, "upper limit for --n1-auto");
  app.add_option("--tol", f.tol, "singular value tolerance");
  app.add_option("--output,-o", f.output, "output file");
  app.add_option("--format", f.format, "csv | json");
  app.add_option("--workers", f.workers, "worker threads (NLSPEC_WORKERS overrides)");
  const bool gridded = cmd == Command::gamma_field || cmd == Command::pseudospectrum || cmd == Command::spectrum;
  if (gridded) {
    app.add_option("--bbox", f.bbox, "xmin xmax ymin ymax")->expected(4);
    app.add_option("--grid-level", f.grid_level, "grid level n (default n2)");
    app.add_option("--initial-pitch", f.initial_pitch, "coarsest lattice pitch, a power of two");
  }
  if (cmd == Command::pseudospectrum) app.add_option("--epsilons", f.epsilons, "descending epsilon list");
  if (cmd == Command::spectrum) app.add_option("--n3", f.n3, "spectrum parameter (epsilon = 1/n3)");
  if (cmd == Command::localize) {
    app.add_option("--seed", f.seed, "re im")->expected(2);
    app.add_option("--radius", f.radius, "initial stencil pitch");
    app.add_option("--shrink", f.shrink, "pitch factor after a non-improving step");
    app.add_option("--accuracy", f.accuracy, "stop once the pitch falls below this");
    app.add_option("--max-steps", f.max_steps, "stencil evaluations per n2");
    app.add_option("--n2-schedule", f.n2_schedule, "increasing n2 values");
  }
  if (cmd == Command::pseudofun) {
    app.add_option("--z", f.z, "re im")->expected(2);
    app.add_option("--mesh-start", f.mesh_start, "first sample point");
    app.add_option("--mesh-stop", f.mesh_stop, "last sample point");
    app.add_option("--mesh-count", f.mesh_count, "number of sample points");
  }
}

Json overlay(const CLI::App& app, const Flags& f) {
  Json j = Json::object();
  auto given = [&](const char* name) { return app.count(name) > 0; };
  Json pencil = Json::object();
  if (given("--pencil")) pencil["name"] = f.pencil;
  if (given("--shift-f")) pencil["shift_f"] = f.shift_f;
  if (given("--nu")) pencil["nu"] = f.nu;
  if (given("--r2")) pencil["r2"] = f.r2;
  if (given("--capacity")) pencil["capacity"] = f.capacity;
  if (!pencil.empty()) j["pencil"] = pencil;
  if (given("--mode")) j["mode"] = f.mode;
  if (given("--n2")) j["n2"] = f.n2;
  if (given("--n1")) j["n1"] = f.n1;
  if (given("--n1-auto")) j["n1_auto"] = f.n1_auto;
  if (given("--n1-max")) j["n1_max"] = f.n1_max;
  if (given("--tol")) j["tol"] = f.tol;
  if (given("--output")) j["output"] = f.output;
  if (given("--format")) j["format"] = f.format;
  if (given("--workers")) j["workers"] = f.workers;
  auto optional = [&](const char* flag, const char* key, const auto& value) {
    if (app.get_option_no_throw(flag) && given(flag)) j[key] = value;
  };
  optional("--bbox", "bbox", f.bbox);
  optional("--grid-level", "grid_level", f.grid_level);
  optional("--initial-pitch", "initial_pitch", f.initial_pitch);
  optional("--epsilons", "epsilons", f.epsilons);
  optional("--n3", "n3", f.n3);
  optional("--seed", "seed", f.seed);
  optional("--radius", "radius", f.radius);
  optional("--shrink", "shrink", f.shrink);
  optional("--accuracy", "accuracy", f.accuracy);
  optional("--max-steps", "max_steps", f.max_steps);
  optional("--n2-schedule", "n2_schedule", f.n2_schedule);
  optional("--z", "z", f.z);
  Json mesh = Json::object();
  if (app.get_option_no_throw("--mesh-start")) {
    if (given("--mesh-start")) mesh["start"] = f.mesh_start;
    if (given("--mesh-stop")) mesh["stop"] = f.mesh_stop;
    if (given("--mesh-count")) mesh["count"] = f.mesh_count;
  }
  if (!mesh.empty()) j["mesh"] = mesh;
  return j;
}

RunConfig resolve(const CLI::App& app, const Flags& f, Command cmd) {
  RunConfig c = f.config.empty() ? RunConfig{} : nlspec::io::load_config_file(f.config);
  nlspec::io::apply_json(c, overlay(app, f));
  c.workers = nlspec::workers_from_env(c.workers);
  nlspec::io::validate(c, cmd);
  return c;
}

void report_unstagnated(std::size_t count) {
  if (count > 0)
    std::cerr << "warning: n1 doubling reached n1_max without stagnating at " << count << " point(s)\n";
}

int run(Command cmd, const RunConfig& c) {
  using namespace nlspec::io;
  const auto parallel = nlspec::thread_pool_for(c.workers);
  std::string text;
  switch (cmd) {
    case Command::gamma_field: {
      const auto r = run_gamma_field(c, parallel);
      report_unstagnated(r.unstagnated);
      text = format_field(r.file, c.format);
      break;
    }
    case Command::pseudospectrum: {
      const auto r = run_pseudospectrum(c, parallel);
      report_unstagnated(r.unstagnated);
      text = format_field(r.file, c.format);
      break;
    }
    case Command::spectrum: {
      const auto r = run_spectrum(c, parallel);
      report_unstagnated(r.unstagnated);
      text = format_field(r.file, c.format);
      break;
    }
    case Command::localize: {
      const auto f = run_localize(c);
      if (f.header.value("budget_exhausted", false)) std::cerr << "warning: step budget exhausted\n";
      text = format_localize(f, c.format);
      break;
    }
    case Command::pseudofun: {
      const auto f = run_pseudofun(c);
      if (f.degenerate) std::cerr << "warning: smallest singular value is not simple\n";
      text = format_pseudofun(f, c.format);
      break;
    }
  }
  detail::write_file(c.output, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra and pseudospectra of nonlinear operator pencils"};
  app.set_version_flag("--version", std::string(nlspec::kLibraryVersion));
  app.require_subcommand(1);

  const Command commands[] = {Command::gamma_field, Command::pseudospectrum, Command::spectrum, Command::localize,
                              Command::pseudofun};
  const char* help[] = {"evaluate gamma on a grid", "epsilon-pseudospectra on a grid", "spectrum approximation on a grid",
                        "pattern search for a local minimum of gamma", "approximate pseudoeigenfunction at z"};
  std::vector<Flags> flags(std::size(commands));
  std::vector<CLI::App*> subs;
  for (std::size_t k = 0; k < std::size(commands); ++k) {
    auto* sub = app.add_subcommand(nlspec::io::to_string(commands[k]), help[k]);
    add_flags(*sub, flags[k], commands[k]);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  for (std::size_t k = 0; k < subs.size(); ++k) {
    if (!subs[k]->parsed()) continue;
    try {
      const RunConfig c = resolve(*subs[k], flags[k], commands[k]);
      return run(commands[k], c);
    } catch (const Error& e) {
      std::cerr << "nlspec: " << e.what() << "\n";
      if (e.code() == ErrorCode::config) return kExitConfig;
      if (e.code() == ErrorCode::io) return kExitIo;
      return kExitNumerical;
    } catch (const std::exception& e) {
      std::cerr << "nlspec: " << e.what() << "\n";
      return kExitNumerical;
    }
  }
  return kExitConfig;
}
