#include <doctest.h>

#include <cmath>
#include <random>

#include "capinf/weighted_space.hpp"
#include "oracle_quadrature.hpp"

using namespace capinf;

TEST_CASE("space validation accepts the admissible range only") {
  CHECK_NOTHROW(make_space(2, 1.0));
  CHECK_NOTHROW(make_space(3, 0.0));
  CHECK_NOTHROW(make_space(3, -0.999));
  CHECK_NOTHROW(make_space(2, 0.5));
  CHECK_THROWS_AS(make_space(1, 0.0), ValidationError);
  CHECK_THROWS_AS(make_space(4, 0.0), ValidationError);
  CHECK_THROWS_AS(make_space(3, -1.0), ValidationError);   // gamma = 2 - n
  CHECK_THROWS_AS(make_space(2, 0.0), ValidationError);    // gamma = 2 - n
  CHECK_THROWS_AS(make_space(2, -0.5), ValidationError);
  CHECK_THROWS_AS(make_space(2, 0.0, 0.5), ValidationError);
  CHECK_THROWS_AS(make_space(3, 0.0, 1.0, CoefficientMode::DiagonalPerturbed,
                             1.0),
                  ValidationError);
  // Amplitude 0.3 needs lambda >= 1/(1-0.3) = 1.428...
  CHECK_THROWS_AS(make_space(3, 0.0, 1.2, CoefficientMode::DiagonalPerturbed,
                             0.3),
                  ValidationError);
  CHECK_NOTHROW(make_space(3, 0.0, 1.0 / 0.7,
                           CoefficientMode::DiagonalPerturbed, 0.3));
  CHECK_THROWS_AS(make_space(3, 0.0, 1.0, CoefficientMode::Isotropic, 0.1),
                  ValidationError);
}

TEST_CASE("alpha is the structural exponent n + gamma - 2") {
  CHECK(make_space(3, 0.0).alpha() == doctest::Approx(1.0));
  CHECK(make_space(2, 1.0).alpha() == doctest::Approx(1.0));
  CHECK(make_space(3, 0.5).alpha() == doctest::Approx(1.5));
  CHECK(make_space(2, 0.5).alpha() == doctest::Approx(0.5));
}

TEST_CASE("centered ball measure: frozen constants") {
  // sigma_{n,gamma} = n/(n+gamma) * vol(B_1), mu(B_r) = sigma * r^{n+gamma}.
  WeightedSpace s30 = make_space(3, 0.0);
  CHECK(mu_ball_sigma(s30) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
  CHECK(mu_ball(s30, 2.0) == doctest::Approx(32.0 * kPi / 3.0).epsilon(1e-14));

  WeightedSpace s31 = make_space(3, 1.0);
  CHECK(mu_ball_sigma(s31) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(mu_ball(s31, 2.0) == doctest::Approx(16.0 * kPi).epsilon(1e-14));

  WeightedSpace s21 = make_space(2, 1.0);
  CHECK(mu_ball(s21, 1.0) == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-14));

  WeightedSpace s3h = make_space(3, 0.5);
  CHECK(mu_ball(s3h, 1.0) ==
        doctest::Approx(3.0 / 3.5 * 4.0 * kPi / 3.0).epsilon(1e-14));
}

TEST_CASE("centered ball measure matches the quadrature oracle") {
  for (auto [n, g] : {std::pair{3, 0.0}, {3, 0.5}, {3, 1.0}, {2, 1.0},
                      {2, 0.5}}) {
    WeightedSpace s = make_space(n, g);
    for (double r : {0.5, 1.0, 2.0, 8.0}) {
      double exact = mu_ball(s, r);
      double quad = oracle::mu_ball_quadrature(s, Vec{0, 0, 0}, r);
      CHECK(quad == doctest::Approx(exact).epsilon(1e-9));
    }
  }
}

TEST_CASE("centered ball measure matches deterministic Monte Carlo") {
  WeightedSpace s = make_space(3, 1.0);
  double mc = oracle::mu_ball_monte_carlo(s, 2.0);
  // 4M samples: relative sampling error ~ 1e-3.
  CHECK(mc == doctest::Approx(16.0 * kPi).epsilon(5e-3));
}

TEST_CASE("off-center ball measure obeys the inclusion bounds") {
  for (auto [n, g] : {std::pair{3, 0.0}, {3, 0.5}, {2, 1.0}}) {
    WeightedSpace s = make_space(n, g);
    Vec c = (n == 3) ? vec3(0.3, -0.2, 0.1) : vec2(0.3, -0.2);
    double r = 1.25;
    auto [lo, hi] = mu_ball_bounds(s, c, r);
    double actual = oracle::mu_ball_quadrature(s, c, r);
    CHECK(lo < hi);
    CHECK(actual >= lo * (1.0 - 1e-9));
    CHECK(actual <= hi * (1.0 + 1e-9));
    // The bounds must be the sandwich values of centered balls.
    CHECK(lo == doctest::Approx(mu_ball(s, r - norm(c))).epsilon(1e-13));
    CHECK(hi == doctest::Approx(mu_ball(s, r + norm(c))).epsilon(1e-13));
  }
  CHECK_THROWS_AS(mu_ball_bounds(make_space(3, 0.0), vec3(2, 0, 0), 1.0),
                  ValidationError);
}

TEST_CASE("isotropic weight is |x|^gamma on every axis") {
  WeightedSpace s = make_space(3, 0.5);
  Vec p = vec3(3.0, 4.0, 0.0);  // |p| = 5
  for (int axis = 0; axis < 3; ++axis)
    CHECK(weight_at(s, p, axis) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK_THROWS_AS(weight_at(s, vec3(0, 0, 0)), ValidationError);
}

TEST_CASE("perturbed weight stays inside the ellipticity band") {
  const double amp = 0.3;
  WeightedSpace s = make_space(3, 0.5, 1.0 / (1.0 - amp),
                               CoefficientMode::DiagonalPerturbed, amp);
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  bool axes_differ = false;
  for (int i = 0; i < 100000; ++i) {
    Vec p = vec3(u(rng), u(rng), u(rng));
    double r = norm(p);
    if (r < 1e-6) continue;
    double base = std::pow(r, s.gamma);
    double w0 = weight_at(s, p, 0);
    for (int axis = 0; axis < 3; ++axis) {
      double w = weight_at(s, p, axis);
      CHECK(w >= base * (1.0 - amp) * (1.0 - 1e-12));
      CHECK(w <= base * (1.0 + amp) * (1.0 + 1e-12));
      if (axis > 0 && std::abs(w - w0) > 1e-12 * base) axes_differ = true;
    }
  }
  CHECK(axes_differ);
}

TEST_CASE("rescaled view transports the modulation exactly") {
  const double amp = 0.3;
  WeightedSpace s = make_space(3, 0.5, 1.0 / (1.0 - amp),
                               CoefficientMode::DiagonalPerturbed, amp);
  double scale = 1024.0;
  WeightedSpace viewed = at_scale(s, scale);
  Vec y = vec3(0.7, -0.4, 0.2);
  Vec x = vec3(y[0] * scale, y[1] * scale, y[2] * scale);
  for (int axis = 0; axis < 3; ++axis) {
    // weight(scale*y) = scale^gamma * weight_viewed(y)
    double lhs = weight_at(s, x, axis);
    double rhs = std::pow(scale, s.gamma) * weight_at(viewed, y, axis);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
  // Isotropic spaces are scale-free.
  WeightedSpace iso = make_space(3, 0.5);
  CHECK(weight_at(at_scale(iso, 64.0), y) ==
        doctest::Approx(weight_at(iso, y)).epsilon(1e-15));
}
