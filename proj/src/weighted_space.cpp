#include "capinf/weighted_space.hpp"

#include <cmath>

namespace capinf {

WeightedSpace make_space(int n, double gamma, double lambda,
                         CoefficientMode mode, double perturbation_amplitude) {
  if (n != 2 && n != 3)
    throw ValidationError("dimension must be 2 or 3");
  if (!(gamma > 2.0 - n))
    throw ValidationError("weight exponent out of range: need gamma > 2 - n (got gamma = " +
                          std::to_string(gamma) + ", n = " + std::to_string(n) + ")");
  if (!(lambda >= 1.0)) throw ValidationError("ellipticity constant must satisfy lambda >= 1");
  if (mode == CoefficientMode::DiagonalPerturbed) {
    double a = perturbation_amplitude;
    if (!(a >= 0.0 && a < 1.0))
      throw ValidationError("perturbation amplitude must lie in [0, 1)");
    double needed = std::max(1.0 + a, 1.0 / (1.0 - a));
    if (lambda < needed)
      throw ValidationError("lambda too small for perturbation amplitude: need lambda >= " +
                            std::to_string(needed));
  } else if (perturbation_amplitude != 0.0) {
    throw ValidationError("perturbation amplitude requires DiagonalPerturbed mode");
  }
  WeightedSpace s;
  s.n = n;
  s.gamma = gamma;
  s.lambda = lambda;
  s.mode = mode;
  s.perturbation_amplitude = perturbation_amplitude;
  return s;
}

double weight_at(const WeightedSpace& space, const Vec& point, int axis) {
  double r = norm(point);
  // |x|^0 = 1 everywhere; any other exponent degenerates at the origin, as
  // does the log-phase modulation.
  if (r <= 0.0 &&
      !(space.gamma == 0.0 && space.mode == CoefficientMode::Isotropic))
    throw ValidationError("weight_at: point must be nonzero");
  double base = space.gamma == 0.0 ? 1.0 : std::pow(r, space.gamma);
  if (space.mode == CoefficientMode::Isotropic) return base;
  // Scale-adapted modulation: smooth and bounded on R^n \ {0}, resolved on
  // every dyadic grid because it oscillates in log|x|.
  double phase = 2.0 * M_PI * axis / space.n;
  double s = std::sin(std::log(r) + space.perturbation_phase + phase);
  return base * (1.0 + space.perturbation_amplitude * s);
}

WeightedSpace at_scale(const WeightedSpace& space, double scale) {
  if (!(scale > 0.0)) throw ValidationError("at_scale: scale must be positive");
  WeightedSpace s = space;
  if (s.mode == CoefficientMode::DiagonalPerturbed)
    s.perturbation_phase += std::log(scale);
  return s;
}

double mu_ball_sigma(const WeightedSpace& space) {
  return space.n / (space.n + space.gamma) * unit_ball_volume(space.n);
}

double mu_ball(const WeightedSpace& space, double r) {
  if (!(r >= 0.0)) throw ValidationError("mu_ball: radius must be nonnegative");
  return mu_ball_sigma(space) * std::pow(r, space.n + space.gamma);
}

std::pair<double, double> mu_ball_bounds(const WeightedSpace& space,
                                         const Vec& center, double r) {
  double c = norm(center);
  if (!(c < r)) throw ValidationError("mu_ball_bounds: need |center| < r");
  double sigma = mu_ball_sigma(space);
  double p = space.n + space.gamma;
  return {sigma * std::pow(r - c, p), sigma * std::pow(r + c, p)};
}

}  // namespace capinf
