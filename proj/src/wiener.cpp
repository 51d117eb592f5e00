#include "capinf/wiener.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace capinf {

namespace {

// Rescales a true-coordinate set to unit scale: member(y) = member(s*y),
// features shrunk by s.
RasterizableSet to_unit_scale(RasterizableSet set, double s) {
  RasterizableSet unit;
  unit.member = [s, m = std::move(set.member)](const Vec& y) {
    return m(Vec{y[0] * s, y[1] * s, y[2] * s});
  };
  unit.features.reserve(set.features.size());
  for (const Ball& b : set.features)
    unit.features.push_back(
        Ball{Vec{b.center[0] / s, b.center[1] / s, b.center[2] / s},
             b.radius / s});
  return unit;
}

CapacityGrid unit_grid(int cells, const Vec& cs) {
  CapacityGrid g;
  g.half_width = 2.0 + norm(cs);
  g.cells = cells;
  g.domain_center = cs;
  return g;
}

// Capacity of `set` (true coordinates) against the ball B_{2s}(center),
// computed at unit scale and reported in unit-scale units, i.e. the true
// capacity divided by s^alpha.
CapacityOutcome scaled_capacity(const WeightedSpace& space,
                                const RasterizableSet& set, double s,
                                const Vec& center, int cells,
                                const SolveOptions& solve) {
  Vec cs{center[0] / s, center[1] / s, center[2] / s};
  if (norm(cs) > 1.0)
    throw ValidationError("wiener: center lies outside the requested scale");
  return capacity(at_scale(space, s), to_unit_scale(set, s), 2.0,
                  unit_grid(cells, cs), solve);
}

}  // namespace

WienerTerm wiener_term(const WeightedSpace& space, const ExteriorSet& ext,
                       int k, int cells, const Vec& center,
                       const SolveOptions& solve) {
  double s = std::ldexp(1.0, k);
  WienerTerm term;
  term.k = k;
  term.details = scaled_capacity(space, slab(ext, k, center), s, center,
                                 cells, solve);
  // cap(E_k, B_{2^{k+1}}) = s^alpha * unit value, and w_k strips the same
  // s^alpha factor, so the unit value is w_k itself.
  term.value = term.details.value;
  return term;
}

WienerSequence wiener_sum(const WeightedSpace& space, const ExteriorSet& ext,
                          int k_first, int k_last, int cells,
                          const Vec& center, const SolveOptions& solve) {
  if (k_last < k_first)
    throw ValidationError("wiener: window must satisfy k_first <= k_last");
  WienerSequence seq;
  seq.terms.reserve(static_cast<std::size_t>(k_last - k_first + 1));
  for (int k = k_first; k <= k_last; ++k) {
    seq.terms.push_back(wiener_term(space, ext, k, cells, center, solve));
    seq.sum += seq.terms.back().value;
  }
  return seq;
}

IntegralResult wiener_integral(const WeightedSpace& space,
                               const ExteriorSet& ext, double t_lo,
                               double t_hi, double inner,
                               int samples_per_octave, int cells,
                               const Vec& center, const SolveOptions& solve) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo))
    throw ValidationError("wiener integral: need 0 < t_lo < t_hi");
  if (samples_per_octave < 1)
    throw ValidationError("wiener integral: need at least one sample/octave");

  double octaves = std::log2(t_hi / t_lo);
  int count = std::max(1, static_cast<int>(std::ceil(octaves * samples_per_octave)));
  double dtau = std::log(t_hi / t_lo) / count;

  // f(t) = cap(truncation, B_{2t}) / cap(B_t, B_{2t}) integrated against
  // dlog t.  Both capacities scale as t^alpha, so the unit-scale solve
  // divided by the exact unit-scale shell capacity gives f(t) directly.
  const double shell = radial_capacity_exact(space, 1.0, 2.0);
  IntegralResult result;
  result.nodes = count + 1;
  double prev = 0.0;
  for (int j = 0; j <= count; ++j) {
    double t = t_lo * std::exp(dtau * j);
    if (j == count) t = t_hi;  // avoid rounding drift at the endpoint
    CapacityOutcome cap_out = scaled_capacity(
        space, truncated_set(ext, t, center, inner), t, center, cells, solve);
    double f = cap_out.value / shell;
    if (j > 0) result.value += 0.5 * (prev + f) * dtau;
    prev = f;
  }
  return result;
}

EquivalenceReport equivalence_ratio(const WeightedSpace& space,
                                    const ExteriorSet& ext, int k_first,
                                    int k_last, int cells, const Vec& center,
                                    int samples_per_octave,
                                    const SolveOptions& solve) {
  EquivalenceReport report;
  report.sequence =
      wiener_sum(space, ext, k_first, k_last, cells, center, solve);
  double t_lo = std::ldexp(1.0, k_first - 1);
  double t_hi = std::ldexp(1.0, k_last);
  IntegralResult integral =
      wiener_integral(space, ext, t_lo, t_hi, /*inner=*/t_lo,
                      samples_per_octave, cells, center, solve);
  report.integral_value = integral.value;
  report.integral_nodes = integral.nodes;
  if (report.sequence.sum == 0.0 && integral.value == 0.0)
    report.ratio = 1.0;  // both sides see an empty window: they agree
  else if (report.sequence.sum == 0.0)
    report.ratio = std::numeric_limits<double>::infinity();
  else
    report.ratio = integral.value / report.sequence.sum;
  return report;
}

ClassifyResult classify_sequence(const WienerSequence& sequence,
                                 const ClassifyPolicy& policy) {
  ClassifyResult result;
  result.sequence = sequence;
  const std::vector<WienerTerm>& terms = result.sequence.terms;
  const std::size_t count = terms.size();
  if (count == 0) {
    result.reason = "empty window";
    return result;
  }
  const std::size_t tail_start = count / 2;

  bool tail_vanishes = true;
  double tail_sum = 0.0;
  for (std::size_t i = tail_start; i < count; ++i) {
    tail_vanishes = tail_vanishes && terms[i].value <= policy.floor;
    tail_sum += terms[i].value;
  }
  result.tail_fraction =
      result.sequence.sum > 0.0 ? tail_sum / result.sequence.sum : 0.0;

  if (tail_vanishes) {
    result.verdict = RegularityVerdict::Irregular;
    result.reason = "tail terms vanish at the working resolution";
    return result;
  }

  // Least squares of log w_k on log k over the usable window.
  std::vector<double> xs, ys;
  for (const WienerTerm& t : terms)
    if (t.value > policy.floor) {
      xs.push_back(std::log(static_cast<double>(t.k)));
      ys.push_back(std::log(t.value));
    }
  if (static_cast<int>(xs.size()) < policy.min_fit_points) {
    result.verdict = RegularityVerdict::Indeterminate;
    result.reason = "too few terms above the floor for a trend fit";
    return result;
  }

  const std::size_t m = xs.size();
  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= m;
  ybar /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  if (!(sxx > 0.0)) {
    result.verdict = RegularityVerdict::Indeterminate;
    result.reason = "degenerate trend fit";
    return result;
  }
  double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double resid = ys[i] - ybar - slope * (xs[i] - xbar);
    rss += resid * resid;
  }
  double se = (m > 2) ? std::sqrt(rss / double(m - 2) / sxx) : 0.0;
  result.slope = slope;
  result.slope_stderr = se;

  const double reg_cut = -1.0 - policy.eps_regular;
  const double irr_cut = -1.0 - policy.eps_irregular;
  const double ci = policy.ci_sigmas * se;
  char buf[160];
  if (slope >= reg_cut && slope - ci >= irr_cut) {
    result.verdict = RegularityVerdict::Regular;
    std::snprintf(buf, sizeof buf,
                  "slope %.3f +/- %.3f clears the divergence cut %.2f", slope,
                  se, reg_cut);
  } else if (slope <= irr_cut && slope + ci <= reg_cut &&
             result.tail_fraction <= policy.cauchy_fraction) {
    result.verdict = RegularityVerdict::Irregular;
    std::snprintf(buf, sizeof buf,
                  "slope %.3f +/- %.3f below the convergence cut %.2f, "
                  "tail share %.2f",
                  slope, se, irr_cut, result.tail_fraction);
  } else {
    result.verdict = RegularityVerdict::Indeterminate;
    std::snprintf(buf, sizeof buf,
                  "slope %.3f +/- %.3f straddles the decision band "
                  "[%.2f, %.2f] (tail share %.2f)",
                  slope, se, irr_cut, reg_cut, result.tail_fraction);
  }
  result.reason = buf;
  return result;
}

ClassifyResult classify(const WeightedSpace& space, const ExteriorSet& ext,
                        int k_first, int k_last, int cells,
                        const ClassifyPolicy& policy, const Vec& center,
                        const SolveOptions& solve) {
  return classify_sequence(
      wiener_sum(space, ext, k_first, k_last, cells, center, solve), policy);
}

}  // namespace capinf
