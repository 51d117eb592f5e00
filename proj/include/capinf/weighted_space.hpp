#pragma once

#include <optional>
#include <utility>

#include "capinf/common.hpp"

namespace capinf {

/// Coefficient field of the operator div(A grad u). Isotropic means
/// A = |x|^gamma * Id; DiagonalPerturbed multiplies each diagonal entry by a
/// smooth bounded modulation 1 + amplitude*sin(log|x| + phase_axis), staying
/// inside the ellipticity band [|x|^gamma/lambda, lambda*|x|^gamma].
enum class CoefficientMode { Isotropic, DiagonalPerturbed };

/// Ambient weighted space: dimension n >= 2, weight |x|^gamma with
/// gamma > 2 - n, ellipticity constant lambda >= 1.
///
/// The structural exponent alpha = n + gamma - 2 > 0 controls every decay
/// rate in the toolkit.
struct WeightedSpace {
  int n = 3;
  double gamma = 0.0;
  double lambda = 1.0;
  CoefficientMode mode = CoefficientMode::Isotropic;
  double perturbation_amplitude = 0.0;  // used in DiagonalPerturbed mode
  double perturbation_phase = 0.0;      // log of the coordinate scale in use

  double alpha() const { return n + gamma - 2.0; }
};

/// Validating constructor; throws ValidationError outside the admissible
/// range (n >= 2, gamma > 2 - n, lambda >= 1; perturbation amplitude in
/// [0,1) with lambda covering the band).
WeightedSpace make_space(int n, double gamma, double lambda = 1.0,
                         CoefficientMode mode = CoefficientMode::Isotropic,
                         double perturbation_amplitude = 0.0);

/// Diagonal coefficient entry a_axis(point). Isotropic mode returns
/// |point|^gamma for every axis. Precondition: point != 0.
double weight_at(const WeightedSpace& space, const Vec& point, int axis = 0);

/// The same space viewed in coordinates x = scale * y: the homogeneous
/// factor |x|^gamma is restored by the caller through the scaling law
/// value(x) = scale^alpha * value(y), while the (non-homogeneous)
/// modulation is transported exactly by shifting its log-radial phase.
/// Identity for isotropic coefficients.
WeightedSpace at_scale(const WeightedSpace& space, double scale);

/// Weighted measure of the centered ball: mu_gamma(B_r(0)) = sigma * r^{n+gamma}
/// with sigma = n/(n+gamma) * vol(B_1^n).
double mu_ball(const WeightedSpace& space, double r);

/// The constant sigma_{n,gamma} above.
double mu_ball_sigma(const WeightedSpace& space);

/// Two-sided bounds for mu_gamma(B_r(center)) via ball inclusion:
/// sigma*(r-|c|)^{n+gamma} <= mu <= sigma*(r+|c|)^{n+gamma}.
/// Precondition: |center| < r.
std::pair<double, double> mu_ball_bounds(const WeightedSpace& space,
                                         const Vec& center, double r);

}  // namespace capinf
