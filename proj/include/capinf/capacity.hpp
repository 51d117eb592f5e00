#pragma once

#include "capinf/discrete.hpp"
#include "capinf/geometry.hpp"
#include "capinf/mesh.hpp"
#include "capinf/solver.hpp"
#include "capinf/weighted_space.hpp"

namespace capinf {

/// Weighted condenser capacity of the ball pair (closed B_r, B_R), both
/// centered at the origin, in closed form:
///     cap(B_r, B_R) = omega_{n-1} * alpha / (r^{-alpha} - R^{-alpha}),
/// with alpha = n + gamma - 2 and omega_{n-1} the unit-sphere area.
/// R may be infinity (whole-space capacity). Isotropic coefficients only.
double radial_capacity_exact(const WeightedSpace& space, double r, double R);

/// The corresponding equilibrium potential at |x| = t, r <= t <= R:
///     u(t) = (t^{-alpha} - R^{-alpha}) / (r^{-alpha} - R^{-alpha}).
double radial_potential_exact(const WeightedSpace& space, double r, double R,
                              double t);

/// Decay bound for any capacitary potential of a compact set inside the
/// closed ball of radius r: for |x| > r,
///     u(x) <= cap_value * (|x| - r)^{-alpha} / (omega_{n-1} * alpha).
/// Follows from comparing with the whole-space equilibrium potential of a
/// ball centred at the worst-case nearest point of the set.
double whole_space_potential_bound(const WeightedSpace& space,
                                   double cap_value, double r, const Vec& x);

struct CapacityGrid {
  double half_width = 2.0;  // grid covers [-half_width, half_width]^n
  int cells = 64;           // per axis, even
  // Center of the condenser's outer ball; the grid cube stays at the
  // origin so the weight singularity never moves relative to the lattice.
  Vec domain_center{0.0, 0.0, 0.0};
};

struct CapacityOutcome {
  double value = 0.0;        // the energy of the equilibrium potential
  double flux_value = 0.0;   // same quantity measured as flux (cross-check)
  bool empty_interior = false;  // set vanished under rasterization: value 0
  std::size_t forced_cells = 0;
  std::size_t well_count = 0;
  // Features too large for the well model yet invisible to the lattice;
  // their host cell is pinned instead (a resolution warning, not an error).
  std::size_t fallback_cells = 0;
  std::size_t unknown_cells = 0;
  SolveReport solve;
};

/// Full solution, kept when the potential field itself is needed.
struct CapacitySolution {
  CapacityOutcome outcome;
  Mesh mesh;
  std::vector<double> trans;
  std::vector<double> field;  // per-cell equilibrium potential
  std::vector<Well> wells;
};

/// Condenser capacity cap(K, B_R) on a uniform grid: cells inside K are
/// forced to one, cells with |center| >= outer_radius to zero, and the
/// equilibrium energy is the capacity. Features of K too small to touch any
/// cell center are coupled through wells when small enough for the well
/// model, otherwise pinned to their nearest cell. A set that produces no
/// forced cell and no well at all yields an honest zero with
/// empty_interior set.
CapacitySolution capacitary_potential(const WeightedSpace& space,
                                      const RasterizableSet& set,
                                      double outer_radius,
                                      const CapacityGrid& grid,
                                      const SolveOptions& options = {});

CapacityOutcome capacity(const WeightedSpace& space, const RasterizableSet& set,
                         double outer_radius, const CapacityGrid& grid,
                         const SolveOptions& options = {});

}  // namespace capinf
