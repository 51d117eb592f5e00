#include "capinf/capacity.hpp"

#include <algorithm>
#include <cmath>

namespace capinf {

double radial_capacity_exact(const WeightedSpace& space, double r, double R) {
  if (!(r > 0.0) || !(R > r))
    throw ValidationError("radial capacity: need 0 < r < R");
  double a = space.alpha();
  double denom = std::pow(r, -a);
  if (std::isfinite(R)) denom -= std::pow(R, -a);
  return unit_sphere_area(space.n) * a / denom;
}

double radial_potential_exact(const WeightedSpace& space, double r, double R,
                              double t) {
  if (!(r > 0.0) || !(R > r))
    throw ValidationError("radial potential: need 0 < r < R");
  if (t <= r) return 1.0;
  if (t >= R) return 0.0;
  double a = space.alpha();
  double tail = std::isfinite(R) ? std::pow(R, -a) : 0.0;
  return (std::pow(t, -a) - tail) / (std::pow(r, -a) - tail);
}

double whole_space_potential_bound(const WeightedSpace& space,
                                   double cap_value, double r, const Vec& x) {
  double d = norm(x);
  if (!(d > r))
    throw ValidationError("potential bound: point must lie outside radius r");
  double a = space.alpha();
  return cap_value * std::pow(d - r, -a) / (unit_sphere_area(space.n) * a);
}

namespace {

// True if some cell center lies inside the ball. For radii below the cell
// diagonal only the 3^dim lattice neighbourhood of the host can qualify, so
// the scan stays O(1).
bool lattice_sees(const Mesh& mesh, const Ball& ball, int32_t host) {
  double h = mesh.h[host];
  // Worst case (center on a lattice corner): nearest centers sit at
  // distance h*sqrt(dim)/2 < h, so this radius guarantees a hit.
  if (ball.radius >= h) return true;
  int kz = (mesh.dim == 3) ? 1 : 0;
  for (int dz = -kz; dz <= kz; ++dz)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        Vec q = ball.center;
        q[0] += dx * h;
        q[1] += dy * h;
        q[2] += dz * h;
        int32_t id = mesh.locate(q);
        if (id >= 0 && dist(mesh.center[id], ball.center) <= ball.radius)
          return true;
      }
  return false;
}

}  // namespace

CapacitySolution capacitary_potential(const WeightedSpace& space,
                                      const RasterizableSet& set,
                                      double outer_radius,
                                      const CapacityGrid& grid,
                                      const SolveOptions& options) {
  const Vec& dc = grid.domain_center;
  if (!(outer_radius > 0.0) ||
      norm(dc) + outer_radius >
          grid.half_width * std::sqrt(double(space.n)) + 1e-12)
    throw ValidationError("capacity: outer radius incompatible with grid");

  CapacitySolution sol;
  sol.mesh = build_uniform_grid(space.n, grid.half_width, grid.cells);
  const Mesh& mesh = sol.mesh;

  CellMask mask(mesh.cell_count());
  std::vector<std::uint8_t> in_set = rasterize(mesh, set.member);
  double max_forced = 0.0;
  std::size_t forced_zero = 0;
  for (std::size_t i = 0; i < mesh.cell_count(); ++i) {
    double d = dist(mesh.center[i], dc);
    if (d >= outer_radius) {
      if (in_set[i])
        throw ValidationError("capacity: set reaches the outer boundary");
      mask.force(i, 0.0);
      ++forced_zero;
    } else if (in_set[i]) {
      mask.force(i, 1.0);
      max_forced = std::max(max_forced, d);
    }
  }
  if (forced_zero == 0)
    throw ValidationError("capacity: outer boundary not on the grid");

  // Features that fell between cell centers: well coupling when small
  // enough for the model, host-cell pinning with tuned faces otherwise.
  std::vector<std::pair<int32_t, Ball>> pinned;
  for (const Ball& ball : set.features) {
    int32_t host = mesh.locate(ball.center);
    if (host < 0 || dist(ball.center, dc) >= outer_radius) continue;
    if (lattice_sees(mesh, ball, host)) continue;  // rasterization has it
    if (ball.radius <= well_radius_limit(mesh.dim, mesh.h[host])) {
      sol.wells.push_back(make_well(space, mesh, ball, 1.0));
      max_forced = std::max(max_forced, dist(ball.center, dc) + ball.radius);
    } else {
      mask.force(host, 1.0);
      pinned.emplace_back(host, ball);
      ++sol.outcome.fallback_cells;
      max_forced = std::max(max_forced, dist(mesh.center[host], dc));
    }
  }

  std::size_t forced_one = 0;
  for (std::size_t i = 0; i < mesh.cell_count(); ++i)
    forced_one += (mask.tag[i] == CellTag::Forced && mask.value[i] == 1.0);
  sol.outcome.forced_cells = forced_one;
  sol.outcome.well_count = sol.wells.size();

  if (forced_one == 0 && sol.wells.empty()) {
    sol.outcome.empty_interior = true;
    sol.outcome.value = 0.0;
    sol.field.assign(mesh.cell_count(), 0.0);
    return sol;
  }

  sol.trans = transmissibilities(space, mesh);
  sharpen_interface(mesh, mask,
                    [&](const Vec& x) {
                      return dist(x, dc) >= outer_radius || set.member(x);
                    },
                    sol.trans);
  // The sharpener only corrects faces the true surface crosses; a pinned
  // host whose center lies outside its ball has no crossing, so tune its
  // faces to the ball's equivalent radius instead.
  for (const auto& [host, ball] : pinned)
    if (dist(mesh.center[host], ball.center) > ball.radius)
      boost_cell_faces(mesh, host,
                       pinned_host_boost(mesh.dim, ball.radius, mesh.h[host]),
                       sol.trans);
  DiscreteSystem sys = assemble(mesh, sol.trans, mask, sol.wells);
  sol.outcome.unknown_cells = sys.size();
  std::vector<double> x = solve_spd(sys, options, &sol.outcome.solve);
  sol.field = field_from(mask, sys, x);

  sol.outcome.value = energy(mesh, sol.trans, sol.field, sol.wells);
  double shell = 0.5 * (max_forced + outer_radius);
  if (shell <= max_forced)
    throw ValidationError("capacity: no room for a measurement shell");
  sol.outcome.flux_value =
      flux_through_sphere(mesh, sol.trans, sol.field, dc, shell);
  return sol;
}

CapacityOutcome capacity(const WeightedSpace& space, const RasterizableSet& set,
                         double outer_radius, const CapacityGrid& grid,
                         const SolveOptions& options) {
  return capacitary_potential(space, set, outer_radius, grid, options).outcome;
}

}  // namespace capinf
