#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "capinf/common.hpp"

namespace capinf {

/// Closed ball, the reference domain shape for relative capacities.
struct Ball {
  Vec center{0.0, 0.0, 0.0};
  double radius = 1.0;
};

// ---------------------------------------------------------------------------
// Exterior-set families. Each describes the complement Omega^c of an
// unbounded open set Omega; membership tests are exact.
// ---------------------------------------------------------------------------

/// Omega^c = closed ball of the given radius at the origin.
struct BoundedObstacle {
  double radius = 1.0;
};

/// Omega^c = { x : x_1 <= 0 }.
struct HalfSpace {};

/// Omega^c = solid cone around the -e1 axis with vertex at the origin and
/// half-aperture theta in (0, pi/2): { x : -x_1 >= |x| cos(theta) }.
struct Cone {
  double aperture = M_PI / 4.0;
};

/// Radius rule rho_k for the dyadic ball chain, as a raw radius 2^k * g(k):
///   ConstantRatio: g(k) = ratio      Power:        g(k) = k^{ -p }
///   ExpLinear:     g(k) = e^{ -a k } ExpQuadratic: g(k) = e^{ -a k^2 }
struct RadiusRule {
  enum class Type { ConstantRatio, Power, ExpLinear, ExpQuadratic };
  Type type = Type::ConstantRatio;
  double param = 1.0 / 16.0;  // ratio, p, or a depending on type

  double raw_radius(int k) const;
};

/// Omega^c = union over k >= 1 of closed balls B(c_k, rho_k) with centers
/// c_k = 3*2^{k-2} e1 (midway through the k-th dyadic annulus) and radii
/// rho_k = min(rule radius, 2^{k-3}); the cap keeps each ball well inside
/// its annulus, so distinct balls never touch.
struct DyadicBallChain {
  RadiusRule rule;

  Vec center(int k) const { return {3.0 * std::ldexp(1.0, k - 2), 0.0, 0.0}; }
  double radius(int k) const;
};

/// Omega^c = finite union of closed balls.
struct UnionOfBalls {
  std::vector<Ball> balls;
};

struct ExteriorSet {
  std::variant<BoundedObstacle, HalfSpace, Cone, DyadicBallChain, UnionOfBalls> shape;

  std::string family_name() const;
};

ExteriorSet make_bounded_obstacle(double radius);
ExteriorSet make_half_space();
ExteriorSet make_cone(double aperture);
ExteriorSet make_dyadic_ball_chain(RadiusRule rule);
ExteriorSet make_union_of_balls(std::vector<Ball> balls);

/// Exact membership x in Omega^c.
bool contains(const ExteriorSet& ext, const Vec& x);

// ---------------------------------------------------------------------------
// Dyadic slabs: E_k = Omega^c intersected with the closed annulus
// { 2^{k-1} <= |x - center| <= 2^k }. The slabs tile Omega^c outside the
// closed unit ball around `center`.
// ---------------------------------------------------------------------------

/// Membership predicate together with the parametric ball features that a
/// grid may need to treat sub-cell (see the well model in the discretization).
struct RasterizableSet {
  std::function<bool(const Vec&)> member;
  std::vector<Ball> features;  // parametric balls fully inside the region
};

RasterizableSet slab(const ExteriorSet& ext, int k, const Vec& center = {0, 0, 0});

/// Omega^c intersected with the closed ball B(center, t), optionally excluding
/// the open ball of radius `inner` (inner = 0 keeps everything).
RasterizableSet truncated_set(const ExteriorSet& ext, double t,
                              const Vec& center = {0, 0, 0}, double inner = 0.0);

/// Parametric ball list of the family (chain balls with centers inside
/// radius <= reach), empty for non-parametric families.
std::vector<Ball> parametric_balls(const ExteriorSet& ext, double reach);

// ---------------------------------------------------------------------------
// Analytic tail prediction.
// ---------------------------------------------------------------------------

/// Closed-form verdict for families with a known Wiener-series tail:
/// BoundedObstacle -> Irregular; HalfSpace, Cone -> Regular; DyadicBallChain
/// from the tail of w_k ~ (rho_k/2^k)^{n-2} (n >= 3) resp. 1/log(2^k/rho_k)
/// (n = 2); UnionOfBalls -> nullopt.
std::optional<RegularityVerdict> predicted_verdict(const ExteriorSet& ext, int n);

// ---------------------------------------------------------------------------
// JSON (schema 1):
//   {"schema":1, "family":"half_space"}
//   {"schema":1, "family":"bounded_obstacle", "params":{"radius":1.0}}
//   {"schema":1, "family":"cone", "params":{"aperture":0.7853981633974483}}
//   {"schema":1, "family":"dyadic_ball_chain",
//    "params":{"radius_rule":{"type":"power","p":2.0}}}
//   {"schema":1, "family":"union_of_balls",
//    "params":{"balls":[{"center":[3,0,0],"radius":0.5}]}}
// ---------------------------------------------------------------------------

ExteriorSet exterior_from_json(const std::string& text);
std::string exterior_to_json(const ExteriorSet& ext);

}  // namespace capinf
