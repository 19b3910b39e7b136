#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nlspec/algorithms/localize.hpp"
#include "nlspec/algorithms/pseudoeigenfunction.hpp"
#include "nlspec/algorithms/pseudospectrum.hpp"
#include "nlspec/io/run_config.hpp"

namespace nlspec::io {

/// One row of a gamma field file.
struct GammaRecord {
  Complex z;
  GammaEstimate gamma;
  int n2 = 0;
  int n1 = 0;  // rows used; 0 for the Gram route
  GammaMode mode = GammaMode::band;

  bool operator==(const GammaRecord& o) const {
    return z == o.z && gamma.value == o.gamma.value && gamma.tol == o.gamma.tol && gamma.side == o.gamma.side &&
           gamma.provenance == o.gamma.provenance && gamma.center == o.gamma.center && n2 == o.n2 && n1 == o.n1 &&
           mode == o.mode;
  }
};

/// Contents of a gamma-field, pseudospectrum or spectrum file. `members[k]`
/// lists record indices accepted at epsilons[k]; gamma-field files have none.
struct FieldFile {
  Json header;
  std::vector<GammaRecord> records;
  std::vector<double> epsilons;
  std::vector<std::vector<std::size_t>> members;
};

struct LocalizeFile {
  Json header;
  std::vector<Complex> path;
  std::vector<LocalizeLevel> levels;
};

struct PseudofunFile {
  Json header;
  Complex z;
  double residual = 0.0;
  bool degenerate = false;
  GammaEstimate estimate;
  std::vector<Complex> coefficients;
  std::vector<double> mesh;
  std::vector<std::vector<Complex>> values;  // per component, per mesh point
};

inline Json make_header(const std::string& kind, const RunConfig& config) {
  return Json{{"schema_version", kSchemaVersion},
              {"kind", kind},
              {"library_version", kLibraryVersion},
              {"config", to_json(config)}};
}

namespace detail {

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw Error(ErrorCode::io, "bad number '" + s + "'");
  return v;
}

inline int parse_int(const std::string& s) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') throw Error(ErrorCode::io, "bad integer '" + s + "'");
  return static_cast<int>(v);
}

inline std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline Side parse_side(const std::string& s) {
  if (s == "lower") return Side::lower;
  if (s == "upper") return Side::upper;
  throw Error(ErrorCode::io, "bad side '" + s + "'");
}

inline Provenance parse_provenance(const std::string& s) {
  if (s == "rect_lambda1") return Provenance::rect_lambda1;
  if (s == "gram_lambda2") return Provenance::gram_lambda2;
  if (s == "band_exact") return Provenance::band_exact;
  throw Error(ErrorCode::io, "bad provenance '" + s + "'");
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::io, "write to " + path + " failed");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string csv_preamble(const Json& header) {
  return "# nlspec " + header.at("kind").get<std::string>() + "\n# header: " + header.dump() + "\n";
}

// Splits a CSV file into its header JSON, column names and data rows.
struct CsvTable {
  Json header;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t k = 0; k < columns.size(); ++k)
      if (columns[k] == name) return k;
    throw Error(ErrorCode::io, "missing column '" + name + "'");
  }
};

inline CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::stringstream ss(text);
  std::string line;
  bool have_columns = false;
  const std::string tag = "# header: ";
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind(tag, 0) == 0) t.header = Json::parse(line.substr(tag.size()));
      continue;
    }
    if (!have_columns) {
      t.columns = split(line);
      have_columns = true;
      continue;
    }
    auto cells = split(line);
    if (cells.size() != t.columns.size()) throw Error(ErrorCode::io, "ragged CSV row: " + line);
    t.rows.push_back(std::move(cells));
  }
  if (t.header.is_null()) throw Error(ErrorCode::io, "CSV has no header block");
  if (t.header.value("schema_version", 0) != kSchemaVersion) throw Error(ErrorCode::io, "unsupported schema_version");
  if (!have_columns) throw Error(ErrorCode::io, "CSV has no column line");
  return t;
}

inline Json record_json(const GammaRecord& r) {
  return Json{{"re", r.z.real()},
              {"im", r.z.imag()},
              {"gamma", r.gamma.value},
              {"gamma_tol", r.gamma.tol},
              {"side", to_string(r.gamma.side)},
              {"provenance", to_string(r.gamma.provenance)},
              {"center", r.gamma.center},
              {"n2", r.n2},
              {"n1", r.n1},
              {"mode", to_string(r.mode)}};
}

inline GammaRecord record_from(const Json& j) {
  GammaRecord r;
  r.z = {j.at("re").get<double>(), j.at("im").get<double>()};
  r.gamma.value = j.at("gamma").get<double>();
  r.gamma.tol = j.at("gamma_tol").get<double>();
  r.gamma.side = parse_side(j.at("side").get<std::string>());
  r.gamma.provenance = parse_provenance(j.at("provenance").get<std::string>());
  r.gamma.center = j.at("center").get<double>();
  r.n2 = j.at("n2").get<int>();
  r.n1 = j.at("n1").get<int>();
  r.mode = parse_gamma_mode(j.at("mode").get<std::string>());
  return r;
}

}  // namespace detail

/// Fixed, versioned column order of gamma records.
inline const std::vector<std::string>& gamma_columns() {
  static const std::vector<std::string> cols = {"re",     "im",         "gamma", "gamma_tol", "side",
                                                "provenance", "center", "n2",    "n1",        "mode"};
  return cols;
}

inline std::vector<GammaRecord> make_records(const GammaField& field, const PencilOracle& oracle) {
  std::vector<GammaRecord> out;
  out.reserve(field.values.size());
  const auto& s = field.settings;
  int n1 = 0;
  if (s.mode == GammaMode::rect) n1 = s.effective_n1(oracle);
  if (s.mode == GammaMode::band) n1 = s.n2 + oracle.band().value_or(0);
  for (std::size_t k = 0; k < field.values.size(); ++k)
    out.push_back({field.grid.points[k], field.values[k], s.n2, n1, s.mode});
  return out;
}

inline std::string format_field(const FieldFile& f, Format format) {
  if (format == Format::json) {
    Json j = f.header;
    Json records = Json::array();
    for (const auto& r : f.records) records.push_back(detail::record_json(r));
    j["records"] = records;
    if (!f.epsilons.empty()) {
      Json sets = Json::array();
      for (std::size_t k = 0; k < f.epsilons.size(); ++k) {
        Json pts = Json::array();
        for (std::size_t idx : f.members[k])
          pts.push_back(Json::array({f.records[idx].z.real(), f.records[idx].z.imag()}));
        sets.push_back(Json{{"epsilon", f.epsilons[k]}, {"indices", f.members[k]}, {"points", pts}});
      }
      j["sets"] = sets;
    }
    return j.dump(1) + "\n";
  }
  std::string out = detail::csv_preamble(f.header);
  std::string cols;
  for (const auto& c : gamma_columns()) cols += (cols.empty() ? "" : ",") + c;
  for (std::size_t k = 0; k < f.epsilons.size(); ++k) cols += ",eps_" + std::to_string(k);
  out += cols + "\n";
  std::vector<std::vector<char>> flags(f.epsilons.size(), std::vector<char>(f.records.size(), 0));
  for (std::size_t k = 0; k < f.epsilons.size(); ++k)
    for (std::size_t idx : f.members[k]) flags[k][idx] = 1;
  for (std::size_t i = 0; i < f.records.size(); ++i) {
    const auto& r = f.records[i];
    out += detail::num(r.z.real()) + "," + detail::num(r.z.imag()) + "," + detail::num(r.gamma.value) + "," +
           detail::num(r.gamma.tol) + "," + to_string(r.gamma.side) + "," + to_string(r.gamma.provenance) + "," +
           detail::num(r.gamma.center) + "," + std::to_string(r.n2) + "," + std::to_string(r.n1) + "," +
           to_string(r.mode);
    for (std::size_t k = 0; k < f.epsilons.size(); ++k) out += flags[k][i] ? ",1" : ",0";
    out += "\n";
  }
  return out;
}

inline FieldFile parse_field(const std::string& text, Format format) {
  FieldFile f;
  if (format == Format::json) {
    Json j = Json::parse(text);
    if (j.value("schema_version", 0) != kSchemaVersion) throw Error(ErrorCode::io, "unsupported schema_version");
    for (const auto& r : j.at("records")) f.records.push_back(detail::record_from(r));
    if (j.contains("sets")) {
      for (const auto& s : j.at("sets")) {
        f.epsilons.push_back(s.at("epsilon").get<double>());
        f.members.push_back(s.at("indices").get<std::vector<std::size_t>>());
      }
    }
    j.erase("records");
    j.erase("sets");
    f.header = j;
    return f;
  }
  const auto t = detail::parse_csv(text);
  f.header = t.header;
  std::vector<std::size_t> idx;
  for (const auto& c : gamma_columns()) idx.push_back(t.column(c));
  if (t.header.contains("epsilons")) f.epsilons = t.header.at("epsilons").get<std::vector<double>>();
  std::vector<std::size_t> eps_cols;
  for (std::size_t k = 0; k < f.epsilons.size(); ++k) eps_cols.push_back(t.column("eps_" + std::to_string(k)));
  f.members.assign(f.epsilons.size(), {});
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    GammaRecord r;
    r.z = {detail::parse_double(row[idx[0]]), detail::parse_double(row[idx[1]])};
    r.gamma.value = detail::parse_double(row[idx[2]]);
    r.gamma.tol = detail::parse_double(row[idx[3]]);
    r.gamma.side = detail::parse_side(row[idx[4]]);
    r.gamma.provenance = detail::parse_provenance(row[idx[5]]);
    r.gamma.center = detail::parse_double(row[idx[6]]);
    r.n2 = detail::parse_int(row[idx[7]]);
    r.n1 = detail::parse_int(row[idx[8]]);
    r.mode = parse_gamma_mode(row[idx[9]]);
    f.records.push_back(r);
    for (std::size_t k = 0; k < eps_cols.size(); ++k)
      if (row[eps_cols[k]] == "1") f.members[k].push_back(i);
  }
  return f;
}

/// Set files carry their epsilons in the header so CSV readers can label the
/// eps_k columns. Membership uses the same test as the algorithm.
inline FieldFile make_set_file(Json header, std::vector<GammaRecord> records, const std::vector<double>& epsilons,
                               int level) {
  FieldFile f;
  f.header = std::move(header);
  f.header["epsilons"] = epsilons;
  f.records = std::move(records);
  f.epsilons = epsilons;
  for (double eps : epsilons) {
    std::vector<std::size_t> m;
    for (std::size_t i = 0; i < f.records.size(); ++i)
      if (accepts(f.records[i].gamma, level, eps)) m.push_back(i);
    f.members.push_back(std::move(m));
  }
  return f;
}

inline std::string format_localize(const LocalizeFile& f, Format format) {
  if (format == Format::json) {
    Json j = f.header;
    Json path = Json::array();
    for (const auto& z : f.path) path.push_back(Json::array({z.real(), z.imag()}));
    Json levels = Json::array();
    for (const auto& l : f.levels)
      levels.push_back(Json{{"n2", l.n2},
                            {"re", l.z.real()},
                            {"im", l.z.imag()},
                            {"gamma", l.gamma},
                            {"pitch", l.pitch},
                            {"steps", l.steps},
                            {"budget_exhausted", l.budget_exhausted}});
    j["path"] = path;
    j["history"] = levels;
    return j.dump(1) + "\n";
  }
  std::string out = detail::csv_preamble(f.header);
  out += "kind,n2,re,im,gamma,pitch,steps,budget_exhausted\n";
  for (const auto& z : f.path) out += "path,0," + detail::num(z.real()) + "," + detail::num(z.imag()) + ",0,0,0,0\n";
  for (const auto& l : f.levels)
    out += "level," + std::to_string(l.n2) + "," + detail::num(l.z.real()) + "," + detail::num(l.z.imag()) + "," +
           detail::num(l.gamma) + "," + detail::num(l.pitch) + "," + std::to_string(l.steps) + "," +
           (l.budget_exhausted ? "1" : "0") + "\n";
  return out;
}

inline LocalizeFile parse_localize(const std::string& text, Format format) {
  LocalizeFile f;
  if (format == Format::json) {
    Json j = Json::parse(text);
    if (j.value("schema_version", 0) != kSchemaVersion) throw Error(ErrorCode::io, "unsupported schema_version");
    for (const auto& p : j.at("path")) f.path.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    for (const auto& l : j.at("history")) {
      LocalizeLevel v;
      v.n2 = l.at("n2").get<int>();
      v.z = {l.at("re").get<double>(), l.at("im").get<double>()};
      v.gamma = l.at("gamma").get<double>();
      v.pitch = l.at("pitch").get<double>();
      v.steps = l.at("steps").get<int>();
      v.budget_exhausted = l.at("budget_exhausted").get<bool>();
      f.levels.push_back(v);
    }
    j.erase("path");
    j.erase("history");
    f.header = j;
    return f;
  }
  const auto t = detail::parse_csv(text);
  f.header = t.header;
  const auto ck = t.column("kind"), cn = t.column("n2"), cr = t.column("re"), ci = t.column("im"),
             cg = t.column("gamma"), cp = t.column("pitch"), cs = t.column("steps"), cb = t.column("budget_exhausted");
  for (const auto& row : t.rows) {
    const Complex z(detail::parse_double(row[cr]), detail::parse_double(row[ci]));
    if (row[ck] == "path") {
      f.path.push_back(z);
    } else if (row[ck] == "level") {
      LocalizeLevel v;
      v.n2 = detail::parse_int(row[cn]);
      v.z = z;
      v.gamma = detail::parse_double(row[cg]);
      v.pitch = detail::parse_double(row[cp]);
      v.steps = detail::parse_int(row[cs]);
      v.budget_exhausted = row[cb] == "1";
      f.levels.push_back(v);
    } else {
      throw Error(ErrorCode::io, "bad row kind '" + row[ck] + "'");
    }
  }
  return f;
}

inline std::string format_pseudofun(const PseudofunFile& f, Format format) {
  if (format == Format::json) {
    Json j = f.header;
    j["z"] = Json::array({f.z.real(), f.z.imag()});
    j["residual"] = f.residual;
    j["degenerate"] = f.degenerate;
    j["estimate"] = Json{{"value", f.estimate.value},
                         {"tol", f.estimate.tol},
                         {"side", to_string(f.estimate.side)},
                         {"provenance", to_string(f.estimate.provenance)},
                         {"center", f.estimate.center}};
    Json coeffs = Json::array();
    for (const auto& c : f.coefficients) coeffs.push_back(Json::array({c.real(), c.imag()}));
    j["coefficients"] = coeffs;
    j["mesh"] = f.mesh;
    Json values = Json::array();
    for (const auto& comp : f.values) {
      Json v = Json::array();
      for (const auto& c : comp) v.push_back(Json::array({c.real(), c.imag()}));
      values.push_back(v);
    }
    j["values"] = values;
    return j.dump(1) + "\n";
  }
  Json header = f.header;
  header["z"] = Json::array({f.z.real(), f.z.imag()});
  header["residual"] = f.residual;
  header["degenerate"] = f.degenerate;
  header["estimate"] = Json{{"value", f.estimate.value},
                            {"tol", f.estimate.tol},
                            {"side", to_string(f.estimate.side)},
                            {"provenance", to_string(f.estimate.provenance)},
                            {"center", f.estimate.center}};
  std::string out = detail::csv_preamble(header);
  out += "kind,index,x,component,re,im\n";
  for (std::size_t k = 0; k < f.coefficients.size(); ++k)
    out += "coefficient," + std::to_string(k + 1) + ",0,0," + detail::num(f.coefficients[k].real()) + "," +
           detail::num(f.coefficients[k].imag()) + "\n";
  for (std::size_t c = 0; c < f.values.size(); ++c)
    for (std::size_t k = 0; k < f.mesh.size(); ++k)
      out += "sample," + std::to_string(k) + "," + detail::num(f.mesh[k]) + "," + std::to_string(c) + "," +
             detail::num(f.values[c][k].real()) + "," + detail::num(f.values[c][k].imag()) + "\n";
  return out;
}

inline PseudofunFile parse_pseudofun(const std::string& text, Format format) {
  PseudofunFile f;
  auto read_meta = [&](Json& j) {
    f.z = {j.at("z").at(0).get<double>(), j.at("z").at(1).get<double>()};
    f.residual = j.at("residual").get<double>();
    f.degenerate = j.at("degenerate").get<bool>();
    const auto& e = j.at("estimate");
    f.estimate.value = e.at("value").get<double>();
    f.estimate.tol = e.at("tol").get<double>();
    f.estimate.side = detail::parse_side(e.at("side").get<std::string>());
    f.estimate.provenance = detail::parse_provenance(e.at("provenance").get<std::string>());
    f.estimate.center = e.at("center").get<double>();
    for (const char* key : {"z", "residual", "degenerate", "estimate"}) j.erase(key);
  };
  if (format == Format::json) {
    Json j = Json::parse(text);
    if (j.value("schema_version", 0) != kSchemaVersion) throw Error(ErrorCode::io, "unsupported schema_version");
    read_meta(j);
    for (const auto& c : j.at("coefficients")) f.coefficients.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    f.mesh = j.at("mesh").get<std::vector<double>>();
    for (const auto& comp : j.at("values")) {
      std::vector<Complex> v;
      for (const auto& c : comp) v.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
      f.values.push_back(std::move(v));
    }
    for (const char* key : {"coefficients", "mesh", "values"}) j.erase(key);
    f.header = j;
    return f;
  }
  auto t = detail::parse_csv(text);
  read_meta(t.header);
  f.header = t.header;
  const auto ck = t.column("kind"), ci = t.column("index"), cx = t.column("x"), cc = t.column("component"),
             cr = t.column("re"), cm = t.column("im");
  for (const auto& row : t.rows) {
    const Complex v(detail::parse_double(row[cr]), detail::parse_double(row[cm]));
    if (row[ck] == "coefficient") {
      f.coefficients.push_back(v);
    } else if (row[ck] == "sample") {
      const auto comp = static_cast<std::size_t>(detail::parse_int(row[cc]));
      const auto k = static_cast<std::size_t>(detail::parse_int(row[ci]));
      if (f.values.size() <= comp) f.values.resize(comp + 1);
      if (comp == 0) f.mesh.push_back(detail::parse_double(row[cx]));
      if (f.values[comp].size() != k) throw Error(ErrorCode::io, "samples out of order");
      f.values[comp].push_back(v);
    } else {
      throw Error(ErrorCode::io, "bad row kind '" + row[ck] + "'");
    }
  }
  return f;
}

}  // namespace nlspec::io
