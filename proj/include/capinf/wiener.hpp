#pragma once

#include <string>
#include <vector>

#include "capinf/capacity.hpp"
#include "capinf/geometry.hpp"

namespace capinf {

/// One term of the dyadic Wiener series at infinity,
///   w_k = (2^{-k})^alpha * cap(E_k, B_{2^{k+1}}(center)),
/// with E_k the k-th dyadic slab of Omega^c around `center`. The condenser
/// is evaluated on a unit-scale grid through the exact scaling law, so the
/// value is resolution-limited but never coordinate-limited.
struct WienerTerm {
  int k = 0;
  double value = 0.0;
  CapacityOutcome details;
};

struct WienerSequence {
  std::vector<WienerTerm> terms;
  double sum = 0.0;
};

WienerTerm wiener_term(const WeightedSpace& space, const ExteriorSet& ext,
                       int k, int cells, const Vec& center = {0, 0, 0},
                       const SolveOptions& solve = {});

/// All terms k = k_first..k_last and their sum. Divergence of the full
/// series is equivalent to regularity of the point at infinity; the
/// classifier below reads the trend from this finite window.
WienerSequence wiener_sum(const WeightedSpace& space, const ExteriorSet& ext,
                          int k_first, int k_last, int cells,
                          const Vec& center = {0, 0, 0},
                          const SolveOptions& solve = {});

struct IntegralResult {
  double value = 0.0;
  int nodes = 0;
};

/// Continuous form of the same test:
///   integral over [t_lo, t_hi] of
///       cap(Omega^c * { inner <= |x-center| <= t }, B_{2t}(center))
///       / cap(B_t(center), B_{2t}(center))   d(log t),
/// evaluated with geometric nodes (samples_per_octave per doubling) and the
/// trapezoid rule in log t. The denominator comes from the exact radial
/// formula, so the integrand lies in [0, 1] and the integral diverges or
/// converges together with the dyadic sum.
IntegralResult wiener_integral(const WeightedSpace& space,
                               const ExteriorSet& ext, double t_lo,
                               double t_hi, double inner,
                               int samples_per_octave, int cells,
                               const Vec& center = {0, 0, 0},
                               const SolveOptions& solve = {});

/// Sum-vs-integral comparison over a dyadic window [k_first, k_last]. The
/// integral runs over [2^{k_first-1}, 2^{k_last}] with its truncations
/// restricted to |x - center| >= 2^{k_first-1}, so both sides see the same
/// portion of Omega^c and bounded sets give 0/0, reported as ratio 1.
struct EquivalenceReport {
  WienerSequence sequence;
  double integral_value = 0.0;
  int integral_nodes = 0;
  // integral / sum. The normalized integrand is smaller than the raw dyadic
  // terms by the unit-shell capacity, so the ratio sits well below 1; what
  // matters is that one bracket [1/C, C] covers every family and window.
  double ratio = 1.0;
};

EquivalenceReport equivalence_ratio(const WeightedSpace& space,
                                    const ExteriorSet& ext, int k_first,
                                    int k_last, int cells,
                                    const Vec& center = {0, 0, 0},
                                    int samples_per_octave = 2,
                                    const SolveOptions& solve = {});

/// Decision policy for the divergence classifier. The series diverges for
/// log-slope above -1 and converges below it; the band around -1 is
/// asymmetric because slope -1 itself diverges, so near-boundary trends
/// from above must still classify as Regular.
struct ClassifyPolicy {
  double eps_regular = 0.05;    // Regular needs slope >= -1 - eps_regular
  double eps_irregular = 0.10;  // Irregular needs slope <= -1 - eps_irregular
  double floor = 1e-6;          // terms at or below count as numerically zero
  double ci_sigmas = 2.0;       // confidence radius in stderr units
  double cauchy_fraction = 0.5; // max tail share of the sum for Irregular
  int min_fit_points = 4;
};

struct ClassifyResult {
  RegularityVerdict verdict = RegularityVerdict::Indeterminate;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double tail_fraction = 0.0;
  WienerSequence sequence;
  std::string reason;
};

/// Regular / Irregular / Indeterminate from the window trend of log w_k
/// against log k: least squares over all terms above the floor, verdicts
/// gated by the confidence interval, a vanished tail short-circuits to
/// Irregular, and Irregular additionally requires the tail's share of the
/// sum to look summable (Cauchy-style check).
ClassifyResult classify_sequence(const WienerSequence& sequence,
                                 const ClassifyPolicy& policy = {});

/// classify_sequence applied to the computed window.
ClassifyResult classify(const WeightedSpace& space, const ExteriorSet& ext,
                        int k_first, int k_last, int cells,
                        const ClassifyPolicy& policy = {},
                        const Vec& center = {0, 0, 0},
                        const SolveOptions& solve = {});

}  // namespace capinf
