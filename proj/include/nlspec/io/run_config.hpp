#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlspec/algorithms/localize.hpp"
#include "nlspec/pencils/registry.hpp"

namespace nlspec::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class Format { csv, json };

inline Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw Error(ErrorCode::config, "unknown format '" + s + "' (expected csv or json)");
}

inline const char* to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

struct MeshSpec {
  double start = 0.0;
  double stop = 10.0;
  int count = 401;

  std::vector<double> points() const {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = count == 1 ? start : start + (stop - start) * k / (count - 1);
    return out;
  }
};

/// Every parameter of a CLI run. Defaults are filled in before validation so
/// the output header can echo the effective configuration.
struct RunConfig {
  pencils::PencilSpec pencil;
  Rect bbox{-2.0, 2.0, -2.0, 2.0};
  int grid_level = 0;  // 0: use n2
  double initial_pitch = 1.0;
  GammaMode mode = GammaMode::band;
  int n2 = 16;
  int n1 = 0;
  bool n1_auto = false;  // rect mode: double n1 until gamma stagnates
  int n1_max = 0;        // 0: 64 n2
  std::optional<double> tol;
  std::vector<double> epsilons;
  int n3 = 10;
  std::string output;
  Format format = Format::csv;
  unsigned workers = 1;

  // localize
  Complex seed{0.0, 0.0};
  double radius = 0.1;
  double shrink = 0.5;
  double accuracy = 1e-10;
  int max_steps = 400;
  std::vector<int> n2_schedule;

  // pseudofun
  Complex z{0.0, 0.0};
  MeshSpec mesh;

  int effective_grid_level() const { return grid_level > 0 ? grid_level : n2; }
  int effective_n1_max() const { return n1_max > 0 ? n1_max : 64 * n2; }

  GammaSettings gamma_settings() const {
    GammaSettings s;
    s.mode = mode;
    s.n2 = n2;
    s.n1 = n1;
    s.tol = tol;
    return s;
  }

  int largest_n2() const {
    int m = n2;
    for (int v : n2_schedule) m = std::max(m, v);
    return m;
  }
};

namespace detail {

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::config, "complex values are [re, im] pairs");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace detail

inline Json to_json(const RunConfig& c) {
  return Json{
      {"pencil",
       {{"name", c.pencil.name},
        {"shift_f", c.pencil.shift_f},
        {"nu", c.pencil.nu},
        {"r2", c.pencil.r2},
        {"capacity", c.pencil.capacity}}},
      {"bbox", Json::array({c.bbox.xmin, c.bbox.xmax, c.bbox.ymin, c.bbox.ymax})},
      {"grid_level", c.effective_grid_level()},
      {"initial_pitch", c.initial_pitch},
      {"mode", to_string(c.mode)},
      {"n2", c.n2},
      {"n1", c.n1},
      {"n1_auto", c.n1_auto},
      {"n1_max", c.effective_n1_max()},
      {"tol", c.tol ? Json(*c.tol) : Json(default_tol(c.n2))},
      {"epsilons", c.epsilons},
      {"n3", c.n3},
      {"output", c.output},
      {"format", to_string(c.format)},
      {"workers", c.workers},
      {"seed", detail::complex_json(c.seed)},
      {"radius", c.radius},
      {"shrink", c.shrink},
      {"accuracy", c.accuracy},
      {"max_steps", c.max_steps},
      {"n2_schedule", c.n2_schedule},
      {"z", detail::complex_json(c.z)},
      {"mesh", {{"start", c.mesh.start}, {"stop", c.mesh.stop}, {"count", c.mesh.count}}},
  };
}

/// Overlays the keys present in j onto c. Unknown keys are rejected.
inline void apply_json(RunConfig& c, const Json& j) {
  static const std::vector<std::string> known = {
      "pencil", "bbox", "grid_level", "initial_pitch", "mode", "n2", "n1", "n1_auto", "n1_max", "tol", "epsilons", "n3", "output",
      "format", "workers", "seed", "radius", "shrink", "accuracy", "max_steps", "n2_schedule", "z", "mesh"};
  if (!j.is_object()) throw Error(ErrorCode::config, "config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end())
        throw Error(ErrorCode::config, "unknown config key '" + key + "'");
    }
    if (j.contains("pencil")) {
      const auto& p = j.at("pencil");
      if (p.is_string()) {
        c.pencil.name = p.get<std::string>();
      } else {
        if (p.contains("name")) c.pencil.name = p.at("name").get<std::string>();
        if (p.contains("shift_f")) c.pencil.shift_f = p.at("shift_f").get<std::string>();
        if (p.contains("nu")) c.pencil.nu = p.at("nu").get<double>();
        if (p.contains("r2")) c.pencil.r2 = p.at("r2").get<double>();
        if (p.contains("capacity")) c.pencil.capacity = p.at("capacity").get<int>();
      }
    }
    if (j.contains("bbox")) {
      const auto b = j.at("bbox").get<std::vector<double>>();
      if (b.size() != 4) throw Error(ErrorCode::config, "bbox needs 4 numbers: xmin xmax ymin ymax");
      c.bbox = {b[0], b[1], b[2], b[3]};
    }
    if (j.contains("grid_level")) c.grid_level = j.at("grid_level").get<int>();
    if (j.contains("initial_pitch")) c.initial_pitch = j.at("initial_pitch").get<double>();
    if (j.contains("mode")) c.mode = parse_gamma_mode(j.at("mode").get<std::string>());
    if (j.contains("n2")) c.n2 = j.at("n2").get<int>();
    if (j.contains("n1")) c.n1 = j.at("n1").get<int>();
    if (j.contains("n1_auto")) c.n1_auto = j.at("n1_auto").get<bool>();
    if (j.contains("n1_max")) c.n1_max = j.at("n1_max").get<int>();
    if (j.contains("tol") && !j.at("tol").is_null()) c.tol = j.at("tol").get<double>();
    if (j.contains("epsilons")) c.epsilons = j.at("epsilons").get<std::vector<double>>();
    if (j.contains("n3")) c.n3 = j.at("n3").get<int>();
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    if (j.contains("format")) c.format = parse_format(j.at("format").get<std::string>());
    if (j.contains("workers")) c.workers = j.at("workers").get<unsigned>();
    if (j.contains("seed")) c.seed = detail::complex_from(j.at("seed"));
    if (j.contains("radius")) c.radius = j.at("radius").get<double>();
    if (j.contains("shrink")) c.shrink = j.at("shrink").get<double>();
    if (j.contains("accuracy")) c.accuracy = j.at("accuracy").get<double>();
    if (j.contains("max_steps")) c.max_steps = j.at("max_steps").get<int>();
    if (j.contains("n2_schedule")) c.n2_schedule = j.at("n2_schedule").get<std::vector<int>>();
    if (j.contains("z")) c.z = detail::complex_from(j.at("z"));
    if (j.contains("mesh")) {
      const auto& m = j.at("mesh");
      if (m.contains("start")) c.mesh.start = m.at("start").get<double>();
      if (m.contains("stop")) c.mesh.stop = m.at("stop").get<double>();
      if (m.contains("count")) c.mesh.count = m.at("count").get<int>();
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::config, std::string("malformed config: ") + e.what());
  }
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::config, "cannot open config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::config, "config file " + path + " is not valid JSON: " + e.what());
  }
  RunConfig c;
  apply_json(c, j);
  return c;
}

enum class Command { gamma_field, pseudospectrum, spectrum, localize, pseudofun };

inline const char* to_string(Command c) {
  switch (c) {
    case Command::gamma_field: return "gamma-field";
    case Command::pseudospectrum: return "pseudospectrum";
    case Command::spectrum: return "spectrum";
    case Command::localize: return "localize";
    case Command::pseudofun: return "pseudofun";
  }
  return "unknown";
}

/// Checks that need no pencil construction.
inline void validate(const RunConfig& c, Command cmd) {
  if (!pencils::is_known_pencil(c.pencil.name)) throw Error(ErrorCode::config, "unknown pencil '" + c.pencil.name + "'");
  if (c.n2 < 1) throw Error(ErrorCode::config, "n2 must be >= 1");
  if (c.n1 < 0) throw Error(ErrorCode::config, "n1 must be >= 1 (or 0 for the default)");
  if (c.n1_max < 0) throw Error(ErrorCode::config, "n1 max must be >= 1 (or 0 for the default)");
  if (c.n1_auto && c.mode != GammaMode::rect) throw Error(ErrorCode::config, "n1 auto applies to rect mode only");
  if (c.n1 > 0 && c.mode != GammaMode::rect) throw Error(ErrorCode::config, "n1 applies to rect mode only");
  if (c.tol && !(*c.tol > 0.0)) throw Error(ErrorCode::config, "tol must be positive");
  if (c.workers < 1) throw Error(ErrorCode::config, "workers must be >= 1");
  if (c.output.empty()) throw Error(ErrorCode::config, "an output path is required");
  const bool gridded = cmd == Command::gamma_field || cmd == Command::pseudospectrum || cmd == Command::spectrum;
  if (gridded) {
    if (!c.bbox.has_area()) throw Error(ErrorCode::config, "bbox must have xmin < xmax and ymin < ymax");
    if (c.grid_level < 0) throw Error(ErrorCode::config, "grid level must be >= 1");
    if (!(c.initial_pitch > 0.0)) throw Error(ErrorCode::config, "initial pitch must be positive");
    int exponent = 0;
    if (std::frexp(c.initial_pitch, &exponent) != 0.5) throw Error(ErrorCode::config, "initial pitch must be a power of two");
  }
  if (cmd == Command::pseudospectrum) {
    if (c.epsilons.empty()) throw Error(ErrorCode::config, "pseudospectrum needs at least one epsilon");
    for (std::size_t k = 0; k < c.epsilons.size(); ++k) {
      if (!(c.epsilons[k] > 0.0)) throw Error(ErrorCode::config, "epsilons must be positive");
      if (k > 0 && !(c.epsilons[k] < c.epsilons[k - 1]))
        throw Error(ErrorCode::config, "epsilons must be strictly descending");
    }
  }
  if (cmd == Command::spectrum && c.n3 < 1) throw Error(ErrorCode::config, "n3 must be >= 1");
  if (cmd == Command::localize) {
    if (!(c.radius > 0.0)) throw Error(ErrorCode::config, "radius must be positive");
    if (!(c.shrink > 0.0 && c.shrink < 1.0)) throw Error(ErrorCode::config, "shrink must lie in (0, 1)");
    if (!(c.accuracy > 0.0)) throw Error(ErrorCode::config, "accuracy must be positive");
    if (c.max_steps < 1) throw Error(ErrorCode::config, "max steps must be >= 1");
    for (int v : c.n2_schedule)
      if (v < 1) throw Error(ErrorCode::config, "n2 schedule entries must be >= 1");
  }
  if (cmd == Command::pseudofun) {
    if (c.mode == GammaMode::gram) throw Error(ErrorCode::config, "pseudofun needs rect or band mode");
    if (c.mesh.count < 1) throw Error(ErrorCode::config, "mesh count must be >= 1");
  }
}

}  // namespace nlspec::io
