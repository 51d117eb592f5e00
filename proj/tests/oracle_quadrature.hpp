#pragma once

// Independent numerical oracles for the test suite. Everything here is
// computed from first principles (quadrature over definitions, Monte Carlo
// with a fixed seed) so library results are checked against genuinely
// different arithmetic, not against themselves.

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "capinf/common.hpp"
#include "capinf/weighted_space.hpp"

namespace oracle {

inline double simpson_rule(const std::function<double(double)>& f, double a,
                           double b) {
  return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

inline double adaptive_simpson_impl(const std::function<double(double)>& f,
                                    double a, double b, double whole,
                                    double tol, int depth) {
  double m = 0.5 * (a + b);
  double left = simpson_rule(f, a, m);
  double right = simpson_rule(f, m, b);
  if (depth <= 0) return left + right;
  if (std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_impl(f, a, m, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_impl(f, m, b, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol = 1e-12) {
  if (!(b > a)) return 0.0;
  return adaptive_simpson_impl(f, a, b, simpson_rule(f, a, b), tol, 40);
}

/// Weighted measure of a ball B_r(c) by one-dimensional quadrature around
/// the weight's center: spheres of radius s around the origin meet the ball
/// in a cap whose angular fraction has the classical closed form, so
///   mu = integral of s^{n-1+gamma} * omega_{n-1} * fraction(s) ds.
inline double mu_ball_quadrature(const capinf::WeightedSpace& space,
                                 const capinf::Vec& center, double r) {
  const int n = space.n;
  const double g = space.gamma;
  const double c = capinf::norm(center);
  const double omega = capinf::unit_sphere_area(n);

  auto cap_fraction = [&](double s) {
    if (c == 0.0) return s <= r ? 1.0 : 0.0;
    double cosv = (c * c + s * s - r * r) / (2.0 * c * s);
    if (cosv <= -1.0) return 1.0;
    if (cosv >= 1.0) return 0.0;
    double theta = std::acos(cosv);
    if (n == 2) return theta / capinf::kPi;
    return 0.5 * (1.0 - cosv);  // n == 3 spherical cap share
  };

  double full_part = 0.0;
  double lo = 0.0;
  if (r > c) {
    // Spheres with s <= r - c lie entirely inside the ball.
    lo = r - c;
    full_part = omega * std::pow(lo, n + g) / (n + g);
  }
  auto integrand = [&](double s) {
    return omega * std::pow(s, n - 1 + g) * cap_fraction(s);
  };
  return full_part + adaptive_simpson(integrand, lo, c + r, 1e-13);
}

/// Radial condenser capacity through the one-dimensional variational form:
/// the equilibrium profile solves (s^{n-1+gamma} u')' = 0, so
///   cap = omega_{n-1} / integral_r^R s^{1-n-gamma} ds,
/// with the integral evaluated numerically (no alpha-algebra shared with
/// the library's closed form).
inline double radial_capacity_quadrature(const capinf::WeightedSpace& space,
                                         double r, double R) {
  auto resistivity = [&](double s) {
    return std::pow(s, 1.0 - space.n - space.gamma);
  };
  double resistance = adaptive_simpson(resistivity, r, R, 1e-14);
  return capinf::unit_sphere_area(space.n) / resistance;
}

/// Monte Carlo weighted volume of the centered ball B_r, fixed seed.
inline double mu_ball_monte_carlo(const capinf::WeightedSpace& space, double r,
                                  std::size_t samples = 4'000'000) {
  std::mt19937_64 rng(0x5eed5eed5eed5eedULL);
  std::uniform_real_distribution<double> coord(-r, r);
  double acc = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    capinf::Vec x{coord(rng), coord(rng), space.n == 3 ? coord(rng) : 0.0};
    double d2 = capinf::dot(x, x);
    if (d2 <= r * r) acc += std::pow(std::sqrt(d2), space.gamma);
  }
  double cube = std::pow(2.0 * r, space.n);
  return cube * acc / double(samples);
}

}  // namespace oracle
