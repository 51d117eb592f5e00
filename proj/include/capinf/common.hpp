#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace capinf {

// Points live in R^n with n in {2,3}; coordinates beyond the active dimension
// are kept at zero so a single fixed-size type serves both.
using Vec = std::array<double, 3>;

inline Vec vec2(double x, double y) { return {x, y, 0.0}; }
inline Vec vec3(double x, double y, double z) { return {x, y, z}; }

inline double dot(const Vec& a, const Vec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec sub(const Vec& a, const Vec& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec add(const Vec& a, const Vec& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline double dist(const Vec& a, const Vec& b) { return norm(sub(a, b)); }

inline constexpr double kPi = 3.14159265358979323846;

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// Surface measure of the unit sphere S^{n-1} (2*pi for n=2, 4*pi for n=3).
inline double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

/// Outcome of the divergence test for the Wiener series at infinity.
enum class RegularityVerdict { Regular, Irregular, Indeterminate };

inline const char* to_string(RegularityVerdict v) {
  switch (v) {
    case RegularityVerdict::Regular: return "Regular";
    case RegularityVerdict::Irregular: return "Irregular";
    default: return "Indeterminate";
  }
}

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kToolkitName = "capinf";
inline constexpr const char* kToolkitVersion = "0.1.0";

}  // namespace capinf
