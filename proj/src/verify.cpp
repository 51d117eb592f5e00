#include "capinf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <utility>

#include "capinf/capacity.hpp"
#include "capinf/dirichlet.hpp"
#include "capinf/geometry.hpp"
#include "capinf/solver.hpp"
#include "capinf/weighted_space.hpp"
#include "capinf/wiener.hpp"

namespace capinf {
namespace {

std::string strf(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

void add(SuiteReport& rep, std::string name, bool ok, std::string detail) {
  rep.checks.push_back({std::move(name), ok, std::move(detail)});
}

WeightedSpace space_for(int n, double gamma, bool perturbed) {
  if (!perturbed) return make_space(n, gamma);
  return make_space(n, gamma, 1.0 / 0.7, CoefficientMode::DiagonalPerturbed,
                    0.3);
}

RasterizableSet centered_ball(double radius) {
  RasterizableSet s;
  s.member = [radius](const Vec& x) { return norm(x) <= radius; };
  return s;
}

std::vector<double> dyadic_radii(int j0, int j1) {
  std::vector<double> r;
  for (int j = j0; j <= j1; ++j) r.push_back(std::ldexp(1.0, j));
  return r;
}

/// Least-squares slope of y against 0, 1, ..., y.size()-1.
double fit_slope(const std::vector<double>& y) {
  const double n = static_cast<double>(y.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double x = static_cast<double>(i);
    sx += x;
    sy += y[i];
    sxx += x * x;
    sxy += x * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double flux_gap(const CapacityOutcome& out) {
  if (out.value == 0.0) return 0.0;
  return std::abs(out.value - out.flux_value) / out.value;
}

using GapList = std::vector<std::pair<std::string, double>>;

void note_gap(GapList* gaps, const std::string& label,
              const CapacityOutcome& out) {
  if (gaps) gaps->emplace_back(label, flux_gap(out));
}

// ---------------------------------------------------------------------------
// Radial oracle: computed cap(closed B_1, B_2) against the closed form, with
// the observed convergence order across three nested grids. The grid box
// extends to 2.25: at 2.0 the outer zero-set degenerates to the cube
// corners, at 2.5 the error sequence loses monotonicity at these m.
// ---------------------------------------------------------------------------

constexpr double kOracleHalfWidth = 2.25;

struct RadialCase {
  int n;
  double gamma;
  int grids[3];  // coarse to fine, each twice the previous
};

const RadialCase kRadialCases[] = {
    {3, 0.0, {24, 48, 96}},
    {3, 0.5, {24, 48, 96}},
    {2, 1.0, {128, 256, 512}},
};

void radial_oracle_impl(SuiteReport* rep, GapList* gaps) {
  for (const RadialCase& rc : kRadialCases) {
    WeightedSpace s = make_space(rc.n, rc.gamma);
    const double exact = radial_capacity_exact(s, 1.0, 2.0);
    double vals[3];
    for (int i = 0; i < 3; ++i) {
      CapacityOutcome out =
          capacity(s, centered_ball(1.0), 2.0,
                   CapacityGrid{kOracleHalfWidth, rc.grids[i]});
      vals[i] = out.value;
      note_gap(gaps, strf("oracle n=%d g=%g m=%d", rc.n, rc.gamma,
                          rc.grids[i]),
               out);
    }
    if (!rep) continue;
    const double rel = std::abs(vals[2] - exact) / exact;
    add(*rep, strf("oracle value n=%d gamma=%g", rc.n, rc.gamma), rel <= 0.02,
        strf("cap %.6f vs exact %.6f at m=%d: rel err %.2e (bound 2e-02)",
             vals[2], exact, rc.grids[2], rel));
    auto order = richardson_order(vals[0], vals[1], vals[2]);
    add(*rep, strf("oracle convergence n=%d gamma=%g", rc.n, rc.gamma),
        order.has_value() && *order >= 0.8,
        order ? strf("order %.2f across m=%d,%d,%d (bound 0.8)", *order,
                     rc.grids[0], rc.grids[1], rc.grids[2])
              : "order undefined: error sequence not monotone");
  }
}

// ---------------------------------------------------------------------------
// Measure-vs-capacity ratio and condenser monotonicity. The ratio
// mu(B_r) / (r^2 cap(B_r, B_2r)) is scale-free, so one grid per radius
// keeps the discrete value literally identical across r; the derived
// constant is sigma (1 - 2^{-alpha}) / (omega_{n-1} alpha).
// ---------------------------------------------------------------------------

void measure_capacity_impl(SuiteReport* rep, GapList* gaps) {
  struct RatioCase {
    int n;
    double gamma;
    int cells;
  };
  const RatioCase ratio_cases[] = {{3, 0.0, 32}, {3, 0.5, 32}, {2, 1.0, 128}};
  for (const RatioCase& rc : ratio_cases) {
    WeightedSpace s = make_space(rc.n, rc.gamma);
    const double alpha = s.alpha();
    const double omega = unit_sphere_area(rc.n);
    const double derived = mu_ball_sigma(s) *
                           (1.0 - std::pow(2.0, -alpha)) / (omega * alpha);
    double worst = 0.0, worst_r = 1.0, worst_ratio = derived;
    for (double r : {1.0, 2.0, 4.0, 8.0}) {
      CapacityOutcome out = capacity(s, centered_ball(r), 2.0 * r,
                                     CapacityGrid{2.5 * r, rc.cells});
      note_gap(gaps, strf("ratio n=%d g=%g r=%g", rc.n, rc.gamma, r), out);
      const double ratio = mu_ball(s, r) / (r * r * out.value);
      const double rel = std::abs(ratio - derived) / derived;
      if (rel > worst) {
        worst = rel;
        worst_r = r;
        worst_ratio = ratio;
      }
    }
    if (rep)
      add(*rep, strf("measure ratio n=%d gamma=%g", rc.n, rc.gamma),
          worst <= 0.05,
          strf("ratio %.6f vs derived %.6f, worst rel err %.2e at r=%g "
               "(bound 5e-02)",
               worst_ratio, derived, worst, worst_r));
  }

  // Five nested inner sets against one outer ball, and one inner set
  // against five nested outer balls.
  WeightedSpace s = make_space(3, 0.0);
  const double inner_radii[] = {0.5, 0.7, 0.9, 1.1, 1.3};
  double inner_caps[5];
  for (int i = 0; i < 5; ++i) {
    CapacityOutcome out = capacity(s, centered_ball(inner_radii[i]), 2.0,
                                   CapacityGrid{2.5, 48});
    inner_caps[i] = out.value;
    note_gap(gaps, strf("nested K r=%g", inner_radii[i]), out);
  }
  const double outer_radii[] = {1.5, 1.75, 2.0, 2.5, 3.0};
  double outer_caps[5];
  for (int i = 0; i < 5; ++i) {
    CapacityOutcome out = capacity(s, centered_ball(1.0), outer_radii[i],
                                   CapacityGrid{3.5, 64});
    outer_caps[i] = out.value;
    note_gap(gaps, strf("nested B R=%g", outer_radii[i]), out);
  }
  if (!rep) return;
  bool mono = true, anti = true;
  for (int i = 0; i + 1 < 5; ++i) {
    const double slack = 1e-6 * std::max(1.0, inner_caps[i + 1]);
    if (inner_caps[i] > inner_caps[i + 1] + slack) mono = false;
    if (outer_caps[i + 1] > outer_caps[i] + slack) anti = false;
  }
  add(*rep, "capacity monotone in K", mono,
      strf("caps %.4f..%.4f over radii 0.5..1.3 nondecreasing "
           "(slack 1e-06 relative)",
           inner_caps[0], inner_caps[4]));
  add(*rep, "capacity anti-monotone in B", anti,
      strf("caps %.4f..%.4f over outer radii 1.5..3.0 nonincreasing "
           "(slack 1e-06 relative)",
           outer_caps[0], outer_caps[4]));
}

SuiteReport conservation_suite() {
  SuiteReport rep{"conservation", {}};
  GapList gaps;
  radial_oracle_impl(nullptr, &gaps);
  measure_capacity_impl(nullptr, &gaps);
  auto worst = std::max_element(
      gaps.begin(), gaps.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  add(rep, "energy equals flux on every solve", worst->second <= 1e-6,
      strf("worst |energy-flux|/energy %.2e at %s over %zu solves "
           "(bound 1e-06)",
           worst->second, worst->first.c_str(), gaps.size()));
  return rep;
}

// ---------------------------------------------------------------------------
// Sum-vs-integral bracket. The normalized integrand divides out the exact
// shell capacity, so all families land well below 1; one constant C = 64
// brackets every family and survives refinement by 2x within 10%.
// ---------------------------------------------------------------------------

constexpr double kBracketC = 64.0;

SuiteReport wiener_equivalence_suite() {
  SuiteReport rep{"wiener-equivalence", {}};
  struct EquivCase {
    const char* name;
    int n;
    double gamma;
    ExteriorSet ext;
  };
  const EquivCase cases[] = {
      {"half n=3 gamma=0", 3, 0.0, make_half_space()},
      {"half n=3 gamma=0.5", 3, 0.5, make_half_space()},
      {"half n=2 gamma=1", 2, 1.0, make_half_space()},
      {"chain ratio 1/16 n=3 gamma=0", 3, 0.0,
       make_dyadic_ball_chain({RadiusRule::Type::ConstantRatio, 1.0 / 16.0})},
  };
  for (const EquivCase& ec : cases) {
    WeightedSpace s = make_space(ec.n, ec.gamma);
    EquivalenceReport coarse = equivalence_ratio(s, ec.ext, 3, 6, 16);
    EquivalenceReport fine = equivalence_ratio(s, ec.ext, 3, 6, 32);
    const bool in_bracket = coarse.ratio >= 1.0 / kBracketC &&
                            coarse.ratio <= kBracketC &&
                            fine.ratio >= 1.0 / kBracketC &&
                            fine.ratio <= kBracketC;
    const double shift = std::abs(fine.ratio / coarse.ratio - 1.0);
    add(rep, strf("integral/sum bracket: %s", ec.name), in_bracket,
        strf("ratio %.5f (m=16), %.5f (m=32); bracket [1/%g, %g]",
             coarse.ratio, fine.ratio, kBracketC, kBracketC));
    add(rep, strf("bracket stability: %s", ec.name), shift <= 0.10,
        strf("refinement shift %.2f%% (bound 10%%)", 100.0 * shift));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Classification across the calibrated families. Windows and grids are
// frozen where the measured slope clears the decision cuts for both the
// isotropic and the diagonally perturbed coefficients; see each family's
// window in the table.
// ---------------------------------------------------------------------------

struct ClassifyCase {
  std::string name;
  int n;
  double gamma;
  ExteriorSet ext;
  int k_first, k_last, cells;
  RegularityVerdict expected;
};

std::vector<ClassifyCase> classify_cases() {
  std::vector<ClassifyCase> cases;
  for (double g : {0.0, 0.5}) {
    auto nm = [g](const char* fam) { return strf("%s n=3 gamma=%g", fam, g); };
    cases.push_back({nm("bounded"), 3, g, make_bounded_obstacle(1.0), 2, 8, 16,
                     RegularityVerdict::Irregular});
    cases.push_back({nm("half"), 3, g, make_half_space(), 2, 9, 16,
                     RegularityVerdict::Regular});
    cases.push_back({nm("cone pi/4"), 3, g, make_cone(kPi / 4.0), 2, 9, 16,
                     RegularityVerdict::Regular});
    cases.push_back({nm("chain k^-1"), 3, g,
                     make_dyadic_ball_chain({RadiusRule::Type::Power, 1.0}),
                     12, 26, 48, RegularityVerdict::Regular});
    cases.push_back({nm("chain k^-2"), 3, g,
                     make_dyadic_ball_chain({RadiusRule::Type::Power, 2.0}), 3,
                     13, 24, RegularityVerdict::Irregular});
  }
  cases.push_back({"chain e^-k n=2 gamma=1", 2, 1.0,
                   make_dyadic_ball_chain({RadiusRule::Type::ExpLinear, 1.0}),
                   4, 32, 64, RegularityVerdict::Regular});
  cases.push_back(
      {"chain e^-k^2 n=2 gamma=1", 2, 1.0,
       make_dyadic_ball_chain({RadiusRule::Type::ExpQuadratic, 1.0}), 2, 16,
       64, RegularityVerdict::Irregular});
  return cases;
}

void classify_impl(SuiteReport& rep, bool perturbed) {
  for (const ClassifyCase& cc : classify_cases()) {
    WeightedSpace s = space_for(cc.n, cc.gamma, perturbed);
    ClassifyResult res =
        classify(s, cc.ext, cc.k_first, cc.k_last, cc.cells);
    add(rep,
        strf("%sclassify %s", perturbed ? "perturbed " : "",
             cc.name.c_str()),
        res.verdict == cc.expected,
        strf("%s (expected %s): slope %+.3f +/- %.3f, window [%d,%d], m=%d",
             to_string(res.verdict), to_string(cc.expected), res.slope,
             res.slope_stderr, cc.k_first, cc.k_last, cc.cells));
  }
}

SuiteReport classification_suite() {
  SuiteReport rep{"classification", {}};
  classify_impl(rep, false);
  return rep;
}

// ---------------------------------------------------------------------------
// Harmonic measure of infinity: exhaustion limits at fixed probes for the
// bounded obstacle (radial closed form as oracle), decay below threshold
// for the half-space, and monotonicity in R throughout.
// ---------------------------------------------------------------------------

bool nonincreasing(const std::vector<std::vector<double>>& values,
                   std::size_t probe, double slack) {
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i + 1][probe] > values[i][probe] + slack) return false;
  return true;
}

void harmonic_measure_impl(SuiteReport& rep, bool perturbed) {
  const char* pfx = perturbed ? "perturbed " : "";
  const TelescopeSpec spec{1.5, 24};
  for (auto [n, gamma] : {std::pair{3, 0.0}, {2, 1.0}}) {
    WeightedSpace s = space_for(n, gamma, perturbed);
    HarmonicMeasureResult hm = harmonic_measure_of_infinity(
        s, make_bounded_obstacle(1.0), dyadic_radii(4, 7),
        {vec3(2, 0, 0), vec3(4, 0, 0)}, spec);
    for (std::size_t p = 0; p < hm.probes.size(); ++p) {
      const double t = norm(hm.probes[p]);
      if (!perturbed) {
        // Exhaustion limit of the far-boundary measure: 1 - t^{-alpha}.
        const double target = 1.0 - std::pow(t, -s.alpha());
        const double rel = std::abs(hm.values.back()[p] - target) / target;
        add(rep,
            strf("bounded limit n=%d gamma=%g probe %g", n, gamma, t),
            rel <= 0.03,
            strf("value %.4f at R=%g vs limit %.4f: rel err %.2e "
                 "(bound 3e-02)",
                 hm.values.back()[p], hm.radii.back(), target, rel));
      }
      add(rep,
          strf("%sbounded monotone n=%d gamma=%g probe %g", pfx, n, gamma, t),
          nonincreasing(hm.values, p, 1e-6),
          strf("values %.4f -> %.4f nonincreasing over R=16..128 "
               "(slack 1e-06)",
               hm.values.front()[p], hm.values.back()[p]));
    }
  }
  {
    WeightedSpace s = space_for(3, 0.0, perturbed);
    // Off-axis probe at distance exactly 2 from the wall's edge line.
    HarmonicMeasureResult hm = harmonic_measure_of_infinity(
        s, make_half_space(), dyadic_radii(3, 7),
        {vec3(1.0, std::sqrt(3.0), 0.0)}, spec);
    const double last = hm.values.back()[0];
    add(rep, strf("%shalf-space decay", pfx), last <= 0.02,
        strf("measure %.4f at R=128, probe |x|=2 (bound 0.02)", last));
    std::vector<double> logs;
    for (const auto& row : hm.values) logs.push_back(std::log(row[0]));
    const double slope = fit_slope(logs);
    add(rep, strf("%shalf-space log trend", pfx), slope < 0.0,
        strf("log-measure slope %+.3f per doubling (must be negative)",
             slope));
    add(rep, strf("%shalf-space monotone", pfx),
        nonincreasing(hm.values, 0, 1e-6),
        strf("values %.4f -> %.4f nonincreasing over R=8..128 (slack 1e-06)",
             hm.values.front()[0], last));
  }
}

SuiteReport harmonic_measure_suite() {
  SuiteReport rep{"harmonic-measure", {}};
  harmonic_measure_impl(rep, false);
  return rep;
}

// ---------------------------------------------------------------------------
// Uniqueness dichotomy. Every Regular family must come back Unique and
// every Irregular family NonUnique, on schedules deep enough for the
// slow-decay chains to clear the total-decrease gate. The bounded case
// doubles as the linearity cross-check: with nonzero obstacle data the
// probe spread must still equal the harmonic measure.
// ---------------------------------------------------------------------------

struct UniquenessCase {
  std::string name;
  int n;
  double gamma;
  ExteriorSet ext;
  int j_first, j_last;
  UniquenessVerdict expected;
};

std::vector<UniquenessCase> uniqueness_cases() {
  std::vector<UniquenessCase> cases;
  for (double g : {0.0, 0.5}) {
    auto nm = [g](const char* fam) { return strf("%s n=3 gamma=%g", fam, g); };
    cases.push_back({nm("bounded"), 3, g, make_bounded_obstacle(1.0), 4, 7,
                     UniquenessVerdict::NonUnique});
    cases.push_back(
        {nm("half"), 3, g, make_half_space(), 3, 10, UniquenessVerdict::Unique});
    cases.push_back({nm("cone pi/4"), 3, g, make_cone(kPi / 4.0), 3, 13,
                     UniquenessVerdict::Unique});
    cases.push_back({nm("chain k^-1"), 3, g,
                     make_dyadic_ball_chain({RadiusRule::Type::Power, 1.0}), 3,
                     15, UniquenessVerdict::Unique});
    cases.push_back({nm("chain k^-2"), 3, g,
                     make_dyadic_ball_chain({RadiusRule::Type::Power, 2.0}), 3,
                     15, UniquenessVerdict::NonUnique});
  }
  cases.push_back({"chain e^-k n=2 gamma=1", 2, 1.0,
                   make_dyadic_ball_chain({RadiusRule::Type::ExpLinear, 1.0}),
                   3, 15, UniquenessVerdict::Unique});
  cases.push_back(
      {"chain e^-k^2 n=2 gamma=1", 2, 1.0,
       make_dyadic_ball_chain({RadiusRule::Type::ExpQuadratic, 1.0}), 3, 15,
       UniquenessVerdict::NonUnique});
  return cases;
}

void uniqueness_impl(SuiteReport& rep, bool perturbed) {
  const TelescopeSpec spec{1.5, 24};
  const Vec probe = vec3(2, 0, 0);
  for (const UniquenessCase& uc : uniqueness_cases()) {
    WeightedSpace s = space_for(uc.n, uc.gamma, perturbed);
    // Nonzero data on the bounded obstacle makes the spread a genuine
    // two-solve difference rather than a single far-boundary solve.
    const bool crosscheck =
        !perturbed && uc.n == 3 && uc.gamma == 0.0 &&
        uc.name.rfind("bounded", 0) == 0;
    const double data = crosscheck ? 0.3 : 0.0;
    // The cross-check compares values from three independent solves, so run
    // those well past the gate's tolerance to keep iteration noise out of
    // the comparison.
    SolveOptions solve;
    if (crosscheck) solve.tolerance = 1e-11;
    UniquenessReport rep_u = uniqueness_probe(
        s, uc.ext, [data](const Vec&) { return data; }, probe,
        dyadic_radii(uc.j_first, uc.j_last), spec, {}, solve);
    add(rep,
        strf("%suniqueness %s", perturbed ? "perturbed " : "",
             uc.name.c_str()),
        rep_u.verdict == uc.expected,
        strf("%s (expected %s): total decrease %.2f, final spread %.4f, "
             "R up to 2^%d",
             to_string(rep_u.verdict).c_str(), to_string(uc.expected).c_str(),
             rep_u.total_decrease, rep_u.spreads.back(), uc.j_last));
    if (crosscheck) {
      HarmonicMeasureResult hm = harmonic_measure_of_infinity(
          s, uc.ext, rep_u.radii, {probe}, spec, solve);
      double worst = 0.0;
      for (std::size_t i = 0; i < rep_u.spreads.size(); ++i)
        worst = std::max(worst,
                         std::abs(rep_u.spreads[i] - hm.values[i][0]));
      add(rep, "spread equals harmonic measure", worst <= 1e-8,
          strf("worst |spread - measure| %.2e with data 0.3 on the obstacle "
               "(bound 1e-08 = 10x solver tolerance)",
               worst));
    }
  }
}

SuiteReport uniqueness_suite() {
  SuiteReport rep{"uniqueness", {}};
  uniqueness_impl(rep, false);
  return rep;
}

SuiteReport perturbation_suite() {
  SuiteReport rep{"perturbation", {}};
  classify_impl(rep, true);
  uniqueness_impl(rep, true);
  harmonic_measure_impl(rep, true);
  return rep;
}

// ---------------------------------------------------------------------------
// Invariant suites: quick structural checks, far cheaper than the gate.
// ---------------------------------------------------------------------------

SuiteReport capacity_properties_suite() {
  SuiteReport rep{"capacity-properties", {}};
  WeightedSpace s = make_space(3, 0.5);
  {
    RasterizableSet nothing;
    nothing.member = [](const Vec&) { return false; };
    CapacityOutcome out =
        capacity(s, nothing, 2.0, CapacityGrid{2.25, 16});
    add(rep, "empty set has zero capacity",
        out.value == 0.0 && out.empty_interior,
        strf("value %g, empty_interior %d", out.value, out.empty_interior));
  }
  {
    CapacityOutcome unit =
        capacity(s, centered_ball(1.0), 2.0, CapacityGrid{2.25, 24});
    CapacityOutcome doubled =
        capacity(s, centered_ball(2.0), 4.0, CapacityGrid{4.5, 24});
    const double expected = std::pow(2.0, s.alpha());
    const double rel = std::abs(doubled.value / unit.value - expected) /
                       expected;
    add(rep, "capacity scales as s^alpha on matched grids", rel <= 1e-9,
        strf("ratio %.12f vs 2^alpha %.12f: rel err %.2e (bound 1e-09)",
             doubled.value / unit.value, expected, rel));
  }
  {
    CapacityOutcome small =
        capacity(s, centered_ball(0.8), 2.0, CapacityGrid{2.25, 32});
    CapacityOutcome large =
        capacity(s, centered_ball(1.0), 2.0, CapacityGrid{2.25, 32});
    add(rep, "nested sets order their capacities",
        small.value <= large.value + 1e-6 * large.value,
        strf("cap %.4f (r=0.8) <= %.4f (r=1.0)", small.value, large.value));
    const double gap = std::max(flux_gap(small), flux_gap(large));
    add(rep, "conservation on the spot solves", gap <= 1e-6,
        strf("worst |energy-flux|/energy %.2e (bound 1e-06)", gap));
  }
  return rep;
}

SuiteReport dirichlet_properties_suite() {
  SuiteReport rep{"dirichlet-properties", {}};
  WeightedSpace s = make_space(3, 0.0);
  const TelescopeSpec spec{1.5, 24};
  ExteriorSet chain =
      make_dyadic_ball_chain({RadiusRule::Type::Power, 2.0});
  const Vec probe = vec3(2, 0, 0);
  {
    // u(a f, b far) = a u(f, 0) + b u(0, far) at the probe, by linearity.
    TruncatedField mixed = solve_truncated(
        s, chain, [](const Vec&) { return 0.2; }, 0.7, 64.0, spec);
    TruncatedField data_only = solve_truncated(
        s, chain, [](const Vec&) { return 1.0; }, 0.0, 64.0, spec);
    TruncatedField far_only = solve_truncated(
        s, chain, [](const Vec&) { return 0.0; }, 1.0, 64.0, spec);
    const double combo =
        0.2 * data_only.at(probe) + 0.7 * far_only.at(probe);
    const double diff = std::abs(mixed.at(probe) - combo);
    add(rep, "superposition at the probe", diff <= 1e-7,
        strf("|u(0.2, 0.7) - combination| = %.2e (bound 1e-07)", diff));
  }
  {
    HarmonicMeasureResult hm = harmonic_measure_of_infinity(
        s, make_half_space(), dyadic_radii(3, 6),
        {vec3(1.0, std::sqrt(3.0), 0.0)}, spec);
    add(rep, "exhaustion monotone for the half-space",
        nonincreasing(hm.values, 0, 1e-6),
        strf("values %.4f -> %.4f nonincreasing (slack 1e-06)",
             hm.values.front()[0], hm.values.back()[0]));
  }
  {
    LimitBracket lb = limit_bracket_check(
        s, make_bounded_obstacle(1.0), [](const Vec&) { return 0.3; }, 0.3,
        0.0, probe, dyadic_radii(4, 7), spec);
    add(rep, "exhaustion values respect the measure bracket",
        lb.bracket_holds,
        strf("limit estimate %.4f with final margin %.2e", lb.limit_estimate,
             lb.final_margin));
  }
  return rep;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> acceptance_suites() {
  return {"radial-oracle",   "measure-capacity", "conservation",
          "wiener-equivalence", "classification",   "harmonic-measure",
          "uniqueness",      "perturbation"};
}

std::vector<std::string> property_suites() {
  return {"capacity-properties", "dirichlet-properties"};
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names = acceptance_suites();
  for (std::string& p : property_suites()) names.push_back(std::move(p));
  return names;
}

SuiteReport run_suite(const std::string& name) {
  if (name == "radial-oracle") {
    SuiteReport rep{name, {}};
    radial_oracle_impl(&rep, nullptr);
    return rep;
  }
  if (name == "measure-capacity") {
    SuiteReport rep{name, {}};
    measure_capacity_impl(&rep, nullptr);
    return rep;
  }
  if (name == "conservation") return conservation_suite();
  if (name == "wiener-equivalence") return wiener_equivalence_suite();
  if (name == "classification") return classification_suite();
  if (name == "harmonic-measure") return harmonic_measure_suite();
  if (name == "uniqueness") return uniqueness_suite();
  if (name == "perturbation") return perturbation_suite();
  if (name == "capacity-properties") return capacity_properties_suite();
  if (name == "dirichlet-properties") return dirichlet_properties_suite();
  throw ValidationError("verify: unknown suite \"" + name + "\"");
}

std::vector<SuiteReport> run_acceptance() {
  std::vector<SuiteReport> reports;
  for (const std::string& name : acceptance_suites())
    reports.push_back(run_suite(name));
  return reports;
}

std::string render_text(const SuiteReport& report) {
  std::string out;
  std::size_t ok = 0;
  for (const CheckResult& c : report.checks) {
    out += strf("  %s  %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
    if (c.passed) ++ok;
  }
  out += strf("suite %s: %zu/%zu checks passed\n", report.suite.c_str(), ok,
              report.checks.size());
  return out;
}

}  // namespace capinf
