#pragma once

#include <functional>
#include <string>
#include <vector>

#include "capinf/capacity.hpp"
#include "capinf/geometry.hpp"
#include "capinf/mesh.hpp"
#include "capinf/solver.hpp"
#include "capinf/weighted_space.hpp"

namespace capinf {

/// Graded mesh family used for domain exhaustion: a fixed base box with
/// doubling shells out to the requested radius. Meshes for growing radii
/// share cell ids on their common prefix, so their operators nest as
/// principal submatrices — which makes truncation effects monotone.
struct TelescopeSpec {
  double base_half_width = 1.5;
  int base_cells = 48;  // per axis per level, divisible by 4
};

using BoundaryData = std::function<double(const Vec&)>;

/// Solution of the truncated Dirichlet problem on { |x| < R } \ Omega^c:
/// data f on the obstacle cells, the constant far_value on { |x| >= R }.
struct TruncatedField {
  Mesh mesh;
  std::vector<double> trans;
  std::vector<double> field;
  std::vector<Well> wells;
  double far_radius = 0.0;
  std::size_t obstacle_cells = 0;
  std::size_t far_cells = 0;
  std::size_t fallback_cells = 0;
  SolveReport report;

  double at(const Vec& probe) const { return probe_value(mesh, field, probe); }
};

TruncatedField solve_truncated(const WeightedSpace& space,
                               const ExteriorSet& ext, const BoundaryData& f,
                               double far_value, double far_radius,
                               const TelescopeSpec& spec = {},
                               const SolveOptions& solve = {});

/// Harmonic measure of the far boundary: the truncated solution with f = 0
/// and far_value = 1, sampled at the probes for every radius in the
/// schedule. Nonincreasing in R cell-by-cell (up to solver tolerance); its
/// limit is positive exactly when infinity is irregular.
struct HarmonicMeasureResult {
  std::vector<double> radii;
  std::vector<Vec> probes;
  // values[i][j]: measure at radii[i], probes[j]
  std::vector<std::vector<double>> values;
  std::vector<SolveReport> reports;
};

HarmonicMeasureResult harmonic_measure_of_infinity(
    const WeightedSpace& space, const ExteriorSet& ext,
    const std::vector<double>& radii, const std::vector<Vec>& probes,
    const TelescopeSpec& spec = {}, const SolveOptions& solve = {});

/// Uniqueness test for the unbounded Dirichlet problem: solve the same
/// obstacle data with far values 0 and 1; the probe spread between the two
/// runs equals the harmonic measure by linearity, and its trend over the
/// radius schedule decides whether the far boundary keeps influence in the
/// limit (non-uniqueness) or loses it (uniqueness).
enum class UniquenessVerdict { Unique, NonUnique, Indeterminate };

std::string to_string(UniquenessVerdict v);

/// Two Unique paths and one NonUnique path, with a dead zone between:
/// (A) the spread has already collapsed (below small_spread) and still halved
///     over the last two schedule steps, or
/// (B) the spread kept decaying across the whole schedule (total decrease at
///     least unique_total) — the signature of a divergent obstacle series
///     whose absolute level merely needs more octaves to die.
/// NonUnique requires the opposite: a spread that stays large and moved by
/// less than flat_total over the whole schedule. Between the two totals no
/// verdict is offered.
struct UniquenessPolicy {
  double small_spread = 0.02;   // Unique (A): final spread at most this...
  double recent_factor = 2.0;   // ...after this decrease over the last 2 steps
  double unique_total = 2.1;    // Unique (B): total decrease at least this
  double large_spread = 0.05;   // NonUnique: final spread at least this...
  double flat_total = 1.75;     // ...with total decrease at most this
};

struct UniquenessReport {
  UniquenessVerdict verdict = UniquenessVerdict::Indeterminate;
  std::vector<double> radii;
  std::vector<double> spreads;   // per radius, at the probe
  double total_decrease = 0.0;   // first spread / last spread
  double recent_decrease = 0.0;  // spread two steps back / last spread
  std::string reason;
};

UniquenessReport uniqueness_probe(const WeightedSpace& space,
                                  const ExteriorSet& ext,
                                  const BoundaryData& f, const Vec& probe,
                                  const std::vector<double>& radii,
                                  const TelescopeSpec& spec = {},
                                  const UniquenessPolicy& policy = {},
                                  const SolveOptions& solve = {});

/// Maximum-principle bracket for the limit of u_R(probe): successive
/// truncations differ by at most 2 * max(|f|, |far|) * hm_R(probe), so
/// every u_R must lie within that margin of the final value. Verifies the
/// bracket over the schedule and reports the final value as the limit
/// estimate with the last margin as its radius of trust.
struct LimitBracket {
  std::vector<double> radii;
  std::vector<double> values;   // u_R(probe)
  std::vector<double> margins;  // 2 * data bound * hm_R(probe) + slack
  bool bracket_holds = false;
  double limit_estimate = 0.0;
  double final_margin = 0.0;
};

LimitBracket limit_bracket_check(const WeightedSpace& space,
                                 const ExteriorSet& ext, const BoundaryData& f,
                                 double data_bound, double far_value,
                                 const Vec& probe,
                                 const std::vector<double>& radii,
                                 const TelescopeSpec& spec = {},
                                 const SolveOptions& solve = {});

}  // namespace capinf
