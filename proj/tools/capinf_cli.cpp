// capinf: geometry configs in, tables and verdicts out.
//
// Subcommands: capacity, wiener, classify, harmonic-measure, uniqueness,
// verify. A JSON config supplies the space, the exterior geometry, and the
// numeric knobs; command-line flags override individual fields. Results go
// to stdout (or --out) as JSON with the fully resolved config embedded, or
// as CSV with the config in '#' metadata lines.
//
// Exit codes: 0 success (Indeterminate verdicts included), 1 a verify suite
// reported failing checks, 2 invalid input, 3 solver failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "capinf/capacity.hpp"
#include "capinf/common.hpp"
#include "capinf/dirichlet.hpp"
#include "capinf/geometry.hpp"
#include "capinf/io.hpp"
#include "capinf/verify.hpp"
#include "capinf/weighted_space.hpp"
#include "capinf/wiener.hpp"

namespace {

using namespace capinf;

struct CliOptions {
  std::string config_path;
  std::optional<int> grid;
  std::optional<std::string> window;
  std::optional<std::string> rmax;
  std::optional<int> jobs;
  std::string out_path;
  std::string format = "json";
};

RunConfig load_config(const CliOptions& cli) {
  RunConfig config;
  if (!cli.config_path.empty()) {
    std::ifstream in(cli.config_path);
    if (!in) throw ValidationError("cannot read config file: " + cli.config_path);
    std::ostringstream text;
    text << in.rdbuf();
    config = config_from_json(text.str());
  }
  if (cli.grid) config.grid_cells = *cli.grid;
  if (cli.window) {
    int first = 0, last = 0, used = 0;
    if (std::sscanf(cli.window->c_str(), "%d..%d%n", &first, &last, &used) != 2 ||
        used != static_cast<int>(cli.window->size()))
      throw ValidationError("--window expects M0..M1 (got \"" + *cli.window +
                            "\")");
    config.window_first = first;
    config.window_last = last;
  }
  if (cli.rmax) {
    // Accept both the dyadic form 2^J and a plain number.
    int j = 0, used = 0;
    if (std::sscanf(cli.rmax->c_str(), "2^%d%n", &j, &used) == 1 &&
        used == static_cast<int>(cli.rmax->size())) {
      config.rmax = std::ldexp(1.0, j);
    } else {
      char* end = nullptr;
      const double value = std::strtod(cli.rmax->c_str(), &end);
      if (end != cli.rmax->c_str() + cli.rmax->size() || !(value > 0))
        throw ValidationError("--rmax expects 2^J or a positive number (got \"" +
                              *cli.rmax + "\")");
      config.rmax = value;
    }
  }
  if (cli.jobs) config.jobs = *cli.jobs;
  if (config.jobs < 1) throw ValidationError("jobs must be at least 1");
  if (config.window_last < config.window_first)
    throw ValidationError("window must satisfy first <= last");
  return config;
}

const ExteriorSet& require_exterior(const RunConfig& config) {
  if (!config.exterior)
    throw ValidationError("this command needs an \"exterior\" geometry in the config");
  return *config.exterior;
}

void require_probes_in_domain(const RunConfig& config,
                              const std::vector<Vec>& probes) {
  const ExteriorSet& ext = require_exterior(config);
  for (const Vec& p : probes) {
    if (contains(ext, p))
      throw ValidationError("probe (" + format_double(p[0]) + ", " +
                            format_double(p[1]) + ", " + format_double(p[2]) +
                            ") lies outside the domain");
  }
}

std::vector<Vec> probes_from(const RunConfig& config) {
  if (!config.probes.empty()) return config.probes;
  return {vec3(2, 0, 0), vec3(4, 0, 0)};
}

/// Doubling schedule: smallest power of two with R/2 strictly beyond every
/// probe, then doubled until rmax.
std::vector<double> schedule_from(const RunConfig& config,
                                  const std::vector<Vec>& probes) {
  double reach = 0.0;
  for (const Vec& p : probes) reach = std::max(reach, norm(p));
  double r = 1.0;
  while (r / 2.0 <= reach) r *= 2.0;
  std::vector<double> radii;
  for (; r <= config.rmax; r *= 2.0) radii.push_back(r);
  if (radii.empty())
    throw ValidationError("rmax too small: no exhaustion radius clears the probes");
  return radii;
}

void emit(const OutputDocument& doc, const RunConfig& config,
          const CliOptions& cli) {
  const std::string text = cli.format == "csv" ? render_csv(doc, config)
                                               : render_json(doc, config);
  if (cli.out_path.empty())
    std::fputs(text.c_str(), stdout);
  else
    write_text_file(cli.out_path, text);
}

void add_solve_stats(OutputDocument& doc, const CapacityOutcome& out) {
  doc.add("flux_value", out.flux_value);
  const double gap =
      out.value > 0 ? std::abs(out.value - out.flux_value) / out.value : 0.0;
  doc.add("flux_gap_rel", gap);
  doc.add("empty_interior", out.empty_interior ? 1 : 0);
  doc.add("forced_cells", static_cast<int>(out.forced_cells));
  doc.add("well_count", static_cast<int>(out.well_count));
  doc.add("fallback_cells", static_cast<int>(out.fallback_cells));
  doc.add("unknown_cells", static_cast<int>(out.unknown_cells));
  doc.add("solver_converged", out.solve.converged ? 1 : 0);
  doc.add("solver_iterations", out.solve.iterations);
}

int cmd_capacity(const RunConfig& config, const CliOptions& cli) {
  WeightedSpace space = space_from(config);
  const ExteriorSet& ext = require_exterior(config);
  RasterizableSet set = truncated_set(ext, config.rmax / 2.0);
  CapacityGrid grid{1.125 * config.rmax, config.grid_cells};
  CapacityOutcome out =
      capacity(space, set, config.rmax, grid, solve_options_from(config));
  OutputDocument doc;
  doc.add("command", "capacity");
  doc.add("value", out.value);
  add_solve_stats(doc, out);
  if (const auto* ball = std::get_if<BoundedObstacle>(&ext.shape);
      ball && ball->radius <= config.rmax / 2.0)
    doc.add("radial_exact",
            radial_capacity_exact(space, ball->radius, config.rmax));
  emit(doc, config, cli);
  return 0;
}

int cmd_wiener(const RunConfig& config, const CliOptions& cli) {
  WeightedSpace space = space_from(config);
  WienerSequence seq = wiener_sum(space, require_exterior(config),
                                  config.window_first, config.window_last,
                                  config.grid_cells, {0, 0, 0},
                                  solve_options_from(config));
  OutputDocument doc;
  doc.add("command", "wiener");
  doc.add("sum", seq.sum);
  doc.table_header = {"k", "term"};
  for (const WienerTerm& t : seq.terms)
    doc.table_rows.push_back({static_cast<double>(t.k), t.value});
  emit(doc, config, cli);
  return 0;
}

int cmd_classify(const RunConfig& config, const CliOptions& cli) {
  WeightedSpace space = space_from(config);
  ClassifyResult res = classify(space, require_exterior(config),
                                config.window_first, config.window_last,
                                config.grid_cells, {}, {0, 0, 0},
                                solve_options_from(config));
  OutputDocument doc;
  doc.add("command", "classify");
  doc.add("verdict", to_string(res.verdict));
  doc.add("slope", res.slope);
  doc.add("slope_stderr", res.slope_stderr);
  doc.add("tail_fraction", res.tail_fraction);
  doc.add("sum", res.sequence.sum);
  doc.add("reason", res.reason);
  doc.table_header = {"k", "term"};
  for (const WienerTerm& t : res.sequence.terms)
    doc.table_rows.push_back({static_cast<double>(t.k), t.value});
  emit(doc, config, cli);
  return 0;
}

int cmd_harmonic_measure(const RunConfig& config, const CliOptions& cli) {
  WeightedSpace space = space_from(config);
  const std::vector<Vec> probes = probes_from(config);
  require_probes_in_domain(config, probes);
  HarmonicMeasureResult hm = harmonic_measure_of_infinity(
      space, require_exterior(config), schedule_from(config, probes), probes,
      TelescopeSpec{1.5, config.grid_cells}, solve_options_from(config));
  OutputDocument doc;
  doc.add("command", "harmonic-measure");
  for (std::size_t p = 0; p < probes.size(); ++p)
    doc.add("final_probe" + std::to_string(p), hm.values.back()[p]);
  doc.table_header = {"R", "probe_index", "value"};
  for (std::size_t i = 0; i < hm.radii.size(); ++i)
    for (std::size_t p = 0; p < probes.size(); ++p)
      doc.table_rows.push_back(
          {hm.radii[i], static_cast<double>(p), hm.values[i][p]});
  emit(doc, config, cli);
  return 0;
}

int cmd_uniqueness(const RunConfig& config, const CliOptions& cli) {
  WeightedSpace space = space_from(config);
  const Vec probe =
      config.probes.empty() ? vec3(2, 0, 0) : config.probes.front();
  require_probes_in_domain(config, {probe});
  UniquenessReport rep = uniqueness_probe(
      space, require_exterior(config), [](const Vec&) { return 0.0; }, probe,
      schedule_from(config, {probe}), TelescopeSpec{1.5, config.grid_cells},
      {}, solve_options_from(config));
  OutputDocument doc;
  doc.add("command", "uniqueness");
  doc.add("verdict", to_string(rep.verdict));
  doc.add("total_decrease", rep.total_decrease);
  doc.add("recent_decrease", rep.recent_decrease);
  doc.add("final_spread", rep.spreads.back());
  doc.add("reason", rep.reason);
  doc.table_header = {"R", "spread"};
  for (std::size_t i = 0; i < rep.radii.size(); ++i)
    doc.table_rows.push_back({rep.radii[i], rep.spreads[i]});
  emit(doc, config, cli);
  return 0;
}

int cmd_verify(const std::string& suite, const CliOptions& cli) {
  std::vector<std::string> names =
      suite.empty() ? suite_names() : std::vector<std::string>{suite};
  std::string text;
  bool all_passed = true;
  for (const std::string& name : names) {
    SuiteReport rep = run_suite(name);
    all_passed = all_passed && rep.passed();
    text += render_text(rep);
  }
  if (cli.out_path.empty())
    std::fputs(text.c_str(), stdout);
  else
    write_text_file(cli.out_path, text);
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted capacity and boundary regularity toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  CliOptions cli;
  app.add_option("--config", cli.config_path, "JSON run configuration");
  app.add_option("--grid", cli.grid, "grid cells per axis (overrides config)");
  app.add_option("--window", cli.window, "dyadic window M0..M1 (overrides config)");
  app.add_option("--rmax", cli.rmax,
                 "largest exhaustion radius, 2^J or a number (overrides config)");
  app.add_option("--jobs", cli.jobs, "worker cap, recorded in output");
  app.add_option("--out", cli.out_path, "write results here instead of stdout");
  app.add_option("--format", cli.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* sub_capacity =
      app.add_subcommand("capacity", "condenser capacity of the truncated exterior");
  CLI::App* sub_wiener =
      app.add_subcommand("wiener", "normalized capacity terms over a dyadic window");
  CLI::App* sub_classify =
      app.add_subcommand("classify", "regularity verdict from the term decay");
  CLI::App* sub_hm = app.add_subcommand(
      "harmonic-measure", "exhaustion estimates of the measure of infinity");
  CLI::App* sub_unique =
      app.add_subcommand("uniqueness", "solution-spread dichotomy at a probe");
  CLI::App* sub_verify =
      app.add_subcommand("verify", "run a named check suite (default: all)");
  std::string suite;
  sub_verify->add_option("suite", suite, "suite name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sub_verify->parsed()) return cmd_verify(suite, cli);
    RunConfig config = load_config(cli);
    if (sub_capacity->parsed()) return cmd_capacity(config, cli);
    if (sub_wiener->parsed()) return cmd_wiener(config, cli);
    if (sub_classify->parsed()) return cmd_classify(config, cli);
    if (sub_hm->parsed()) return cmd_harmonic_measure(config, cli);
    if (sub_unique->parsed()) return cmd_uniqueness(config, cli);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 3;
  }
  return 0;
}
