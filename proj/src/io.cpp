#include "capinf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include <json.hpp>

namespace capinf {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
  throw ValidationError("config: " + what);
}

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      bad("unknown key \"" + it.key() + "\" in " + where);
}

double number_at(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) bad(std::string(key) + " must be a number");
  return obj[key].get<double>();
}

int integer_at(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer())
    bad(std::string(key) + " must be an integer");
  return obj[key].get<int>();
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
  json root = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (root.is_discarded()) bad("not valid JSON");
  if (!root.is_object()) bad("top level must be an object");
  reject_unknown(root, "config",
                 {"schema", "space", "exterior", "grid", "window", "rmax",
                  "solver", "probes", "jobs"});
  if (integer_at(root, "schema", 1) != 1) bad("unsupported schema version");

  RunConfig c;
  if (root.contains("space")) {
    const json& s = root["space"];
    if (!s.is_object()) bad("space must be an object");
    reject_unknown(s, "space",
                   {"n", "gamma", "lambda", "coefficients",
                    "perturbation_amplitude"});
    c.n = integer_at(s, "n", c.n);
    c.gamma = number_at(s, "gamma", c.gamma);
    c.lambda = number_at(s, "lambda", c.lambda);
    c.perturbation_amplitude =
        number_at(s, "perturbation_amplitude", c.perturbation_amplitude);
    if (s.contains("coefficients")) {
      std::string m = s["coefficients"].is_string()
                          ? s["coefficients"].get<std::string>()
                          : "";
      if (m == "isotropic")
        c.mode = CoefficientMode::Isotropic;
      else if (m == "diagonal_perturbed")
        c.mode = CoefficientMode::DiagonalPerturbed;
      else
        bad("coefficients must be \"isotropic\" or \"diagonal_perturbed\"");
    }
  }

  if (root.contains("exterior")) {
    if (!root["exterior"].is_object()) bad("exterior must be an object");
    c.exterior = exterior_from_json(root["exterior"].dump());
  }

  if (root.contains("grid")) {
    const json& g = root["grid"];
    if (!g.is_object()) bad("grid must be an object");
    reject_unknown(g, "grid", {"cells"});
    c.grid_cells = integer_at(g, "cells", c.grid_cells);
  }
  if (c.grid_cells < 8 || c.grid_cells % 2 != 0)
    bad("grid.cells must be even and >= 8");

  if (root.contains("window")) {
    const json& w = root["window"];
    if (!w.is_object()) bad("window must be an object");
    reject_unknown(w, "window", {"first", "last"});
    c.window_first = integer_at(w, "first", c.window_first);
    c.window_last = integer_at(w, "last", c.window_last);
  }
  if (c.window_first < 1 || c.window_last < c.window_first)
    bad("window must satisfy 1 <= first <= last");

  c.rmax = number_at(root, "rmax", c.rmax);
  if (!(c.rmax > 0.0) || !std::isfinite(c.rmax)) bad("rmax must be positive");

  if (root.contains("solver")) {
    const json& s = root["solver"];
    if (!s.is_object()) bad("solver must be an object");
    reject_unknown(s, "solver", {"tolerance"});
    c.solver_tolerance = number_at(s, "tolerance", c.solver_tolerance);
  }
  if (!(c.solver_tolerance > 0.0) || c.solver_tolerance >= 1e-2)
    bad("solver.tolerance must lie in (0, 1e-2)");

  c.jobs = integer_at(root, "jobs", c.jobs);
  if (c.jobs < 1 || c.jobs > 64) bad("jobs must lie in [1, 64]");

  if (root.contains("probes")) {
    if (!root["probes"].is_array()) bad("probes must be an array");
    for (const json& p : root["probes"]) {
      if (!p.is_array() || (p.size() != 2 && p.size() != 3))
        bad("each probe must be an array of 2 or 3 coordinates");
      Vec v{0, 0, 0};
      for (std::size_t d = 0; d < p.size(); ++d) {
        if (!p[d].is_number()) bad("probe coordinates must be numbers");
        v[d] = p[d].get<double>();
      }
      c.probes.push_back(v);
    }
  }

  // Cross-field validation through the real constructors.
  space_from(c);
  return c;
}

WeightedSpace space_from(const RunConfig& c) {
  return make_space(c.n, c.gamma, c.lambda, c.mode, c.perturbation_amplitude);
}

SolveOptions solve_options_from(const RunConfig& c) {
  SolveOptions o;
  o.tolerance = c.solver_tolerance;
  return o;
}

std::string config_to_json(const RunConfig& c) {
  json root;
  root["schema"] = 1;
  root["space"] = {
      {"n", c.n},
      {"gamma", c.gamma},
      {"lambda", c.lambda},
      {"coefficients", c.mode == CoefficientMode::Isotropic
                           ? "isotropic"
                           : "diagonal_perturbed"},
      {"perturbation_amplitude", c.perturbation_amplitude}};
  if (c.exterior) root["exterior"] = json::parse(exterior_to_json(*c.exterior));
  root["grid"] = {{"cells", c.grid_cells}};
  root["window"] = {{"first", c.window_first}, {"last", c.window_last}};
  root["rmax"] = c.rmax;
  root["solver"] = {{"tolerance", c.solver_tolerance}};
  root["jobs"] = c.jobs;
  if (!c.probes.empty()) {
    json probes = json::array();
    for (const Vec& p : c.probes) {
      json q = json::array();
      for (int d = 0; d < c.n; ++d) q.push_back(p[d]);
      probes.push_back(q);
    }
    root["probes"] = probes;
  }
  return root.dump(2) + "\n";
}

std::string format_double(double value) {
  char buf[40];
  // Whole numbers print as plain integers ("10", never "1e+01").
  if (value == std::floor(value) && std::abs(value) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", value);
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", value);
  // Trim to the shortest representation that still round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char probe[40];
    std::snprintf(probe, sizeof probe, "%.*g", prec, value);
    double back = 0.0;
    std::sscanf(probe, "%lf", &back);
    if (back == value) return probe;
  }
  return buf;
}

void OutputDocument::add(const std::string& key, double value) {
  scalars.emplace_back(key, format_double(value));
}

void OutputDocument::add(const std::string& key, int value) {
  scalars.emplace_back(key, std::to_string(value));
}

std::string render_json(const OutputDocument& doc, const RunConfig& config) {
  json root;
  root["tool"] = kToolkitName;
  root["version"] = kToolkitVersion;
  root["config"] = json::parse(config_to_json(config));
  json results = json::object();
  for (const auto& [key, value] : doc.scalars) {
    // Numeric strings become JSON numbers; everything else stays text.
    json parsed = json::parse(value, nullptr, false);
    if (!parsed.is_discarded() && parsed.is_number())
      results[key] = parsed;
    else
      results[key] = value;
  }
  root["results"] = results;
  if (!doc.table_header.empty()) {
    json table;
    table["columns"] = doc.table_header;
    json rows = json::array();
    for (const auto& row : doc.table_rows) rows.push_back(row);
    table["rows"] = rows;
    root["table"] = table;
  }
  return root.dump(2) + "\n";
}

std::string render_csv(const OutputDocument& doc, const RunConfig& config) {
  std::string out;
  out += "# tool=" + std::string(kToolkitName) +
         " version=" + kToolkitVersion + "\n";
  (void)config;
  for (const auto& [key, value] : doc.scalars)
    out += "# " + key + "=" + value + "\n";
  if (!doc.table_header.empty()) {
    for (std::size_t i = 0; i < doc.table_header.size(); ++i)
      out += (i ? "," : "") + doc.table_header[i];
    out += "\n";
    for (const auto& row : doc.table_rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        out += (i ? "," : "") + format_double(row[i]);
      out += "\n";
    }
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot open output file: " + path);
  file << content;
  if (!file) throw NumericalError("failed writing output file: " + path);
}

}  // namespace capinf
