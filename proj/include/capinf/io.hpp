#pragma once

#include <optional>
#include <string>
#include <vector>

#include "capinf/geometry.hpp"
#include "capinf/solver.hpp"
#include "capinf/weighted_space.hpp"

namespace capinf {

/// Run configuration (JSON schema 1). Every field has a default; unknown
/// keys are rejected so typos fail loudly instead of silently running with
/// defaults. Shape:
///   {
///     "schema": 1,
///     "space": {"n": 3, "gamma": 0.0, "lambda": 1.0,
///               "coefficients": "isotropic" | "diagonal_perturbed",
///               "perturbation_amplitude": 0.0},
///     "exterior": { ... geometry schema ... },
///     "grid": {"cells": 64},
///     "window": {"first": 4, "last": 12},
///     "rmax": 128.0,
///     "solver": {"tolerance": 1e-9},
///     "probes": [[2,0,0], [4,0,0]],
///     "jobs": 1
///   }
struct RunConfig {
  int n = 3;
  double gamma = 0.0;
  double lambda = 1.0;
  CoefficientMode mode = CoefficientMode::Isotropic;
  double perturbation_amplitude = 0.0;

  std::optional<ExteriorSet> exterior;

  int grid_cells = 64;
  int window_first = 4;
  int window_last = 12;
  double rmax = 128.0;
  double solver_tolerance = 1e-9;
  int jobs = 1;
  std::vector<Vec> probes;
};

RunConfig config_from_json(const std::string& text);

/// Fully resolved round-trip form (defaults materialized); embedded in
/// every output so results are reproducible from the output alone.
std::string config_to_json(const RunConfig& config);

WeightedSpace space_from(const RunConfig& config);
SolveOptions solve_options_from(const RunConfig& config);

/// Output documents: a flat, ordered list of scalars plus one optional
/// table, rendered as JSON (with the resolved config and tool version
/// embedded, no timestamps) or as CSV (table only, after '#'-prefixed
/// metadata lines). Both renderings are byte-deterministic.
struct OutputDocument {
  std::vector<std::pair<std::string, std::string>> scalars;
  std::vector<std::string> table_header;
  std::vector<std::vector<double>> table_rows;

  void add(const std::string& key, const std::string& value) {
    scalars.emplace_back(key, value);
  }
  void add(const std::string& key, double value);
  void add(const std::string& key, int value);
};

std::string render_json(const OutputDocument& doc, const RunConfig& config);
std::string render_csv(const OutputDocument& doc, const RunConfig& config);

/// Formats a double the way every writer in the toolkit does (shortest
/// form that round-trips, 17 significant digits at most).
std::string format_double(double value);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace capinf
