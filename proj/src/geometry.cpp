#include "capinf/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace capinf {

using nlohmann::json;

double RadiusRule::raw_radius(int k) const {
  double scale = std::ldexp(1.0, k);  // 2^k
  switch (type) {
    case Type::ConstantRatio: return scale * param;
    case Type::Power: return scale * std::pow(double(k), -param);
    case Type::ExpLinear: return scale * std::exp(-param * k);
    case Type::ExpQuadratic: return scale * std::exp(-param * double(k) * k);
  }
  return 0.0;
}

double DyadicBallChain::radius(int k) const {
  // Cap at 2^{k-3} so the ball sits strictly inside its dyadic annulus.
  return std::min(rule.raw_radius(k), std::ldexp(1.0, k - 3));
}

ExteriorSet make_bounded_obstacle(double radius) {
  if (!(radius > 0.0)) throw ValidationError("bounded obstacle radius must be positive");
  return {BoundedObstacle{radius}};
}

ExteriorSet make_half_space() { return {HalfSpace{}}; }

ExteriorSet make_cone(double aperture) {
  if (!(aperture > 0.0 && aperture < M_PI / 2.0))
    throw ValidationError("cone aperture must lie in (0, pi/2)");
  return {Cone{aperture}};
}

ExteriorSet make_dyadic_ball_chain(RadiusRule rule) {
  if (!(rule.param > 0.0)) throw ValidationError("radius rule parameter must be positive");
  if (rule.type == RadiusRule::Type::ConstantRatio && !(rule.param <= 0.125))
    throw ValidationError("constant radius ratio must be <= 1/8");
  return {DyadicBallChain{rule}};
}

ExteriorSet make_union_of_balls(std::vector<Ball> balls) {
  for (const Ball& b : balls)
    if (!(b.radius > 0.0)) throw ValidationError("union-of-balls radii must be positive");
  return {ExteriorSet{UnionOfBalls{std::move(balls)}}.shape};
}

std::string ExteriorSet::family_name() const {
  struct Visitor {
    std::string operator()(const BoundedObstacle&) const { return "bounded_obstacle"; }
    std::string operator()(const HalfSpace&) const { return "half_space"; }
    std::string operator()(const Cone&) const { return "cone"; }
    std::string operator()(const DyadicBallChain&) const { return "dyadic_ball_chain"; }
    std::string operator()(const UnionOfBalls&) const { return "union_of_balls"; }
  };
  return std::visit(Visitor{}, shape);
}

namespace {

bool chain_contains(const DyadicBallChain& chain, const Vec& x) {
  double d = norm(x);
  if (d <= 0.0) return false;
  // Ball k lives inside the dyadic annulus [2^{k-1}, 2^k]; only two candidate
  // indices can contain x.
  int k0 = int(std::floor(std::log2(d)));
  for (int k = std::max(1, k0); k <= k0 + 2; ++k) {
    if (dist(x, chain.center(k)) <= chain.radius(k)) return true;
  }
  return false;
}

}  // namespace

bool contains(const ExteriorSet& ext, const Vec& x) {
  struct Visitor {
    const Vec& x;
    bool operator()(const BoundedObstacle& b) const { return norm(x) <= b.radius; }
    bool operator()(const HalfSpace&) const { return x[0] <= 0.0; }
    bool operator()(const Cone& c) const { return -x[0] >= norm(x) * std::cos(c.aperture); }
    bool operator()(const DyadicBallChain& ch) const { return chain_contains(ch, x); }
    bool operator()(const UnionOfBalls& u) const {
      for (const Ball& b : u.balls)
        if (dist(x, b.center) <= b.radius) return true;
      return false;
    }
  };
  return std::visit(Visitor{x}, ext.shape);
}

std::vector<Ball> parametric_balls(const ExteriorSet& ext, double reach) {
  std::vector<Ball> out;
  if (const auto* chain = std::get_if<DyadicBallChain>(&ext.shape)) {
    for (int k = 1; std::ldexp(1.0, k - 1) <= reach; ++k) {
      double rho = chain->radius(k);
      if (rho > 0.0) out.push_back({chain->center(k), rho});
    }
  } else if (const auto* u = std::get_if<UnionOfBalls>(&ext.shape)) {
    for (const Ball& b : u->balls)
      if (norm(b.center) <= reach) out.push_back(b);
  }
  return out;
}

namespace {

/// Balls of the family lying entirely inside { lo <= |x - center| <= hi }.
std::vector<Ball> balls_inside_annulus(const ExteriorSet& ext, const Vec& center,
                                       double lo, double hi) {
  std::vector<Ball> out;
  for (const Ball& b : parametric_balls(ext, 4.0 * hi + norm(center))) {
    double d = dist(b.center, center);
    if (d - b.radius >= lo && d + b.radius <= hi) out.push_back(b);
  }
  return out;
}

}  // namespace

RasterizableSet slab(const ExteriorSet& ext, int k, const Vec& center) {
  if (k < 1) throw ValidationError("slab index must satisfy k >= 1");
  double lo = std::ldexp(1.0, k - 1), hi = std::ldexp(1.0, k);
  RasterizableSet s;
  s.member = [ext, center, lo, hi](const Vec& x) {
    double d = dist(x, center);
    return d >= lo && d <= hi && contains(ext, x);
  };
  s.features = balls_inside_annulus(ext, center, lo, hi);
  return s;
}

RasterizableSet truncated_set(const ExteriorSet& ext, double t, const Vec& center,
                              double inner) {
  if (!(t > 0.0)) throw ValidationError("truncation radius must be positive");
  RasterizableSet s;
  s.member = [ext, center, t, inner](const Vec& x) {
    double d = dist(x, center);
    return d <= t && d >= inner && contains(ext, x);
  };
  s.features = balls_inside_annulus(ext, center, inner, t);
  return s;
}

std::optional<RegularityVerdict> predicted_verdict(const ExteriorSet& ext, int n) {
  struct Visitor {
    int n;
    std::optional<RegularityVerdict> operator()(const BoundedObstacle&) const {
      return RegularityVerdict::Irregular;
    }
    std::optional<RegularityVerdict> operator()(const HalfSpace&) const {
      return RegularityVerdict::Regular;
    }
    std::optional<RegularityVerdict> operator()(const Cone&) const {
      return RegularityVerdict::Regular;
    }
    std::optional<RegularityVerdict> operator()(const DyadicBallChain& ch) const {
      using T = RadiusRule::Type;
      if (n >= 3) {
        // w_k ~ (rho_k / 2^k)^{n-2}; the radius cap only affects finitely
        // many k except for the constant-ratio rule (which is capped flat).
        switch (ch.rule.type) {
          case T::ConstantRatio: return RegularityVerdict::Regular;
          case T::Power:
            return ch.rule.param * (n - 2) <= 1.0 ? RegularityVerdict::Regular
                                                  : RegularityVerdict::Irregular;
          case T::ExpLinear:
          case T::ExpQuadratic: return RegularityVerdict::Irregular;
        }
      }
      // n = 2: w_k ~ 1/log(2^k/rho_k) from the local capacity asymptotic.
      switch (ch.rule.type) {
        case T::ConstantRatio:
        case T::Power:
        case T::ExpLinear: return RegularityVerdict::Regular;      // w_k ~ 1/k
        case T::ExpQuadratic: return RegularityVerdict::Irregular; // w_k ~ 1/k^2
      }
      return std::nullopt;
    }
    std::optional<RegularityVerdict> operator()(const UnionOfBalls&) const {
      return std::nullopt;
    }
  };
  return std::visit(Visitor{n}, ext.shape);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

RadiusRule rule_from_json(const json& j) {
  RadiusRule rule;
  std::string type = j.at("type").get<std::string>();
  if (type == "constant_ratio") {
    rule.type = RadiusRule::Type::ConstantRatio;
    rule.param = j.at("ratio").get<double>();
  } else if (type == "power") {
    rule.type = RadiusRule::Type::Power;
    rule.param = j.at("p").get<double>();
  } else if (type == "exp_linear") {
    rule.type = RadiusRule::Type::ExpLinear;
    rule.param = j.at("a").get<double>();
  } else if (type == "exp_quadratic") {
    rule.type = RadiusRule::Type::ExpQuadratic;
    rule.param = j.at("a").get<double>();
  } else {
    throw ValidationError("unknown radius rule type: " + type);
  }
  return rule;
}

json rule_to_json(const RadiusRule& rule) {
  using T = RadiusRule::Type;
  switch (rule.type) {
    case T::ConstantRatio: return {{"type", "constant_ratio"}, {"ratio", rule.param}};
    case T::Power: return {{"type", "power"}, {"p", rule.param}};
    case T::ExpLinear: return {{"type", "exp_linear"}, {"a", rule.param}};
    case T::ExpQuadratic: return {{"type", "exp_quadratic"}, {"a", rule.param}};
  }
  return {};
}

Vec vec_from_json(const json& j) {
  if (!j.is_array() || j.size() < 2 || j.size() > 3)
    throw ValidationError("point must be an array of 2 or 3 coordinates");
  Vec v{0, 0, 0};
  for (size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

}  // namespace

ExteriorSet exterior_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("geometry JSON parse error: ") + e.what());
  }
  try {
    if (j.value("schema", 0) != 1)
      throw ValidationError("geometry: unsupported or missing schema (expected 1)");
    std::string family = j.at("family").get<std::string>();
    json params = j.value("params", json::object());
    if (family == "bounded_obstacle")
      return make_bounded_obstacle(params.value("radius", 1.0));
    if (family == "half_space") return make_half_space();
    if (family == "cone") return make_cone(params.value("aperture", M_PI / 4.0));
    if (family == "dyadic_ball_chain")
      return make_dyadic_ball_chain(rule_from_json(params.at("radius_rule")));
    if (family == "union_of_balls") {
      std::vector<Ball> balls;
      for (const json& jb : params.at("balls"))
        balls.push_back({vec_from_json(jb.at("center")), jb.at("radius").get<double>()});
      return make_union_of_balls(std::move(balls));
    }
    throw ValidationError("unknown geometry family: " + family);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("geometry JSON: ") + e.what());
  }
}

std::string exterior_to_json(const ExteriorSet& ext) {
  json j{{"schema", 1}, {"family", ext.family_name()}};
  struct Visitor {
    json& j;
    void operator()(const BoundedObstacle& b) const {
      j["params"] = {{"radius", b.radius}};
    }
    void operator()(const HalfSpace&) const {}
    void operator()(const Cone& c) const { j["params"] = {{"aperture", c.aperture}}; }
    void operator()(const DyadicBallChain& ch) const {
      j["params"] = {{"radius_rule", rule_to_json(ch.rule)}};
    }
    void operator()(const UnionOfBalls& u) const {
      json balls = json::array();
      for (const Ball& b : u.balls) {
        balls.push_back({{"center", {b.center[0], b.center[1], b.center[2]}},
                         {"radius", b.radius}});
      }
      j["params"] = {{"balls", balls}};
    }
  };
  std::visit(Visitor{j}, ext.shape);
  return j.dump();
}

}  // namespace capinf
