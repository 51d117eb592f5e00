#include "capinf/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace capinf {

std::string to_string(UniquenessVerdict v) {
  switch (v) {
    case UniquenessVerdict::Unique: return "Unique";
    case UniquenessVerdict::NonUnique: return "NonUnique";
    default: return "Indeterminate";
  }
}

TruncatedField solve_truncated(const WeightedSpace& space,
                               const ExteriorSet& ext, const BoundaryData& f,
                               double far_value, double far_radius,
                               const TelescopeSpec& spec,
                               const SolveOptions& solve) {
  if (!(far_radius > spec.base_half_width))
    throw ValidationError("truncated solve: radius inside the base box");

  TruncatedField out;
  out.far_radius = far_radius;
  out.mesh = build_telescope_mesh(space.n, spec.base_half_width,
                                  spec.base_cells, far_radius);
  const Mesh& mesh = out.mesh;

  CellMask mask(mesh.cell_count());
  std::vector<std::uint8_t> in_obstacle =
      rasterize(mesh, [&](const Vec& x) { return contains(ext, x); });
  for (std::size_t i = 0; i < mesh.cell_count(); ++i) {
    if (norm(mesh.center[i]) >= far_radius) {
      mask.force(i, far_value);
      ++out.far_cells;
    } else if (in_obstacle[i]) {
      mask.force(i, f(mesh.center[i]));
      ++out.obstacle_cells;
    }
  }
  if (out.far_cells == 0)
    throw ValidationError("truncated solve: far boundary not on the mesh");

  // Sub-cell obstacle features: well coupling or host pinning, same policy
  // as the capacity solver.
  std::vector<std::pair<int32_t, Ball>> pinned;
  for (const Ball& ball : parametric_balls(ext, far_radius)) {
    int32_t host = mesh.locate(ball.center);
    if (host < 0 || norm(ball.center) >= far_radius) continue;
    if (mask.tag[host] == CellTag::Forced) continue;
    double h = mesh.h[host];
    bool seen = ball.radius >= h;
    if (!seen) {
      int kz = (mesh.dim == 3) ? 1 : 0;
      for (int dz = -kz; dz <= kz && !seen; ++dz)
        for (int dy = -1; dy <= 1 && !seen; ++dy)
          for (int dx = -1; dx <= 1 && !seen; ++dx) {
            Vec q = ball.center;
            q[0] += dx * h;
            q[1] += dy * h;
            q[2] += dz * h;
            int32_t id = mesh.locate(q);
            if (id >= 0 && dist(mesh.center[id], ball.center) <= ball.radius)
              seen = true;
          }
    }
    if (seen) continue;
    if (ball.radius <= well_radius_limit(mesh.dim, h)) {
      out.wells.push_back(make_well(space, mesh, ball, f(ball.center)));
    } else {
      mask.force(host, f(ball.center));
      pinned.emplace_back(host, ball);
      ++out.fallback_cells;
    }
  }

  out.trans = transmissibilities(space, mesh);
  sharpen_interface(mesh, mask,
                    [&](const Vec& x) {
                      return norm(x) >= far_radius || contains(ext, x);
                    },
                    out.trans);
  // As in the capacity solver: hosts without a surface crossing get their
  // faces tuned to the ball's equivalent radius.
  for (const auto& [host, ball] : pinned)
    if (dist(mesh.center[host], ball.center) > ball.radius)
      boost_cell_faces(mesh, host,
                       pinned_host_boost(mesh.dim, ball.radius, mesh.h[host]),
                       out.trans);
  DiscreteSystem sys = assemble(mesh, out.trans, mask, out.wells);
  std::vector<double> x = solve_spd(sys, solve, &out.report);
  out.field = field_from(mask, sys, x);
  return out;
}

HarmonicMeasureResult harmonic_measure_of_infinity(
    const WeightedSpace& space, const ExteriorSet& ext,
    const std::vector<double>& radii, const std::vector<Vec>& probes,
    const TelescopeSpec& spec, const SolveOptions& solve) {
  if (radii.empty()) throw ValidationError("harmonic measure: empty schedule");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw ValidationError("harmonic measure: radii must increase");
  for (const Vec& p : probes)
    if (norm(p) >= radii.front() / 2.0)
      throw ValidationError(
          "harmonic measure: probes must satisfy |probe| < R_min / 2");

  HarmonicMeasureResult result;
  result.radii = radii;
  result.probes = probes;
  for (double R : radii) {
    TruncatedField u = solve_truncated(
        space, ext, [](const Vec&) { return 0.0; }, 1.0, R, spec, solve);
    std::vector<double> row;
    row.reserve(probes.size());
    for (const Vec& p : probes) row.push_back(u.at(p));
    result.values.push_back(std::move(row));
    result.reports.push_back(u.report);
  }
  return result;
}

UniquenessReport uniqueness_probe(const WeightedSpace& space,
                                  const ExteriorSet& ext,
                                  const BoundaryData& f, const Vec& probe,
                                  const std::vector<double>& radii,
                                  const TelescopeSpec& spec,
                                  const UniquenessPolicy& policy,
                                  const SolveOptions& solve) {
  if (radii.size() < 3)
    throw ValidationError("uniqueness probe: need at least three radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw ValidationError("uniqueness probe: radii must increase");
  if (norm(probe) >= radii.front() / 2.0)
    throw ValidationError("uniqueness probe: |probe| < R_min / 2 required");

  UniquenessReport report;
  report.radii = radii;
  for (double R : radii) {
    TruncatedField lo = solve_truncated(space, ext, f, 0.0, R, spec, solve);
    TruncatedField hi = solve_truncated(space, ext, f, 1.0, R, spec, solve);
    report.spreads.push_back(std::abs(hi.at(probe) - lo.at(probe)));
  }

  double first = report.spreads.front();
  double last = report.spreads.back();
  double two_back = report.spreads[report.spreads.size() - 3];
  report.total_decrease = (last > 0.0) ? first / last
                                       : std::numeric_limits<double>::infinity();
  report.recent_decrease = (last > 0.0)
                               ? two_back / last
                               : std::numeric_limits<double>::infinity();

  char buf[200];
  if ((last <= policy.small_spread &&
       report.recent_decrease >= policy.recent_factor) ||
      report.total_decrease >= policy.unique_total) {
    report.verdict = UniquenessVerdict::Unique;
    std::snprintf(buf, sizeof buf,
                  "far influence fades: spread %.4g, /%.3g over last two "
                  "steps, /%.3g total",
                  last, report.recent_decrease, report.total_decrease);
  } else if (last >= policy.large_spread &&
             report.total_decrease <= policy.flat_total) {
    report.verdict = UniquenessVerdict::NonUnique;
    std::snprintf(buf, sizeof buf,
                  "far influence persists: spread %.4g stabilized (/%.3g "
                  "total over the schedule)",
                  last, report.total_decrease);
  } else {
    report.verdict = UniquenessVerdict::Indeterminate;
    std::snprintf(buf, sizeof buf,
                  "trend unclear: spread %.4g, /%.3g over last two steps, "
                  "/%.3g total",
                  last, report.recent_decrease, report.total_decrease);
  }
  report.reason = buf;
  return report;
}

LimitBracket limit_bracket_check(const WeightedSpace& space,
                                 const ExteriorSet& ext, const BoundaryData& f,
                                 double data_bound, double far_value,
                                 const Vec& probe,
                                 const std::vector<double>& radii,
                                 const TelescopeSpec& spec,
                                 const SolveOptions& solve) {
  if (radii.size() < 2)
    throw ValidationError("limit bracket: need at least two radii");
  double bound = std::max(data_bound, std::abs(far_value));

  LimitBracket out;
  out.radii = radii;
  for (double R : radii) {
    TruncatedField u =
        solve_truncated(space, ext, f, far_value, R, spec, solve);
    TruncatedField hm = solve_truncated(
        space, ext, [](const Vec&) { return 0.0; }, 1.0, R, spec, solve);
    out.values.push_back(u.at(probe));
    // Any extension to a larger truncation changes the solution by at most
    // the worst boundary mismatch times the harmonic measure of the far
    // sphere; solver tolerance enters as additive slack.
    out.margins.push_back(2.0 * bound * hm.at(probe) + 10.0 * solve.tolerance);
  }
  out.limit_estimate = out.values.back();
  out.final_margin = out.margins.back();
  out.bracket_holds = true;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    if (std::abs(out.values[i] - out.limit_estimate) > out.margins[i])
      out.bracket_holds = false;
  return out;
}

}  // namespace capinf
