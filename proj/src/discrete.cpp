#include "capinf/discrete.hpp"

#include <algorithm>
#include <cmath>

namespace capinf {

std::vector<double> transmissibilities(const WeightedSpace& space,
                                       const Mesh& mesh) {
  std::vector<double> t(mesh.face_count());
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    Vec fc = mesh.face_center(f);
    t[f] = weight_at(space, fc, mesh.face_axis[f]) * mesh.face_geom[f];
  }
  return t;
}

namespace {

// Equivalent lattice radius of the standard five/seven-point well coupling.
double well_r0(int dim, double h) {
  if (dim == 2) return 0.2079 * h;
  return h / (4.0 * kPi * 0.2527);
}

}  // namespace

double well_radius_limit(int dim, double h) { return 0.95 * well_r0(dim, h); }

Well make_well(const WeightedSpace& space, const Mesh& mesh, const Ball& ball,
               double value) {
  int32_t cell = mesh.locate(ball.center);
  if (cell < 0) throw ValidationError("well: ball center outside the mesh");
  double h = mesh.h[cell];
  double r0 = well_r0(mesh.dim, h);
  if (!(ball.radius > 0.0) || ball.radius > well_radius_limit(mesh.dim, h))
    throw ValidationError("well: ball radius out of the trusted range");
  double w = weight_at(space, ball.center);
  Well well;
  well.cell = cell;
  well.value = value;
  if (mesh.dim == 2)
    well.index = 2.0 * kPi * w / std::log(r0 / ball.radius);
  else
    well.index = 4.0 * kPi * w / (1.0 / ball.radius - 1.0 / r0);
  return well;
}

DiscreteSystem assemble(const Mesh& mesh, const std::vector<double>& trans,
                        const CellMask& mask, const std::vector<Well>& wells) {
  const std::size_t cells = mesh.cell_count();
  if (mask.tag.size() != cells || trans.size() != mesh.face_count())
    throw ValidationError("assemble: mask/transmissibility size mismatch");

  DiscreteSystem sys;
  sys.unknown_of_cell.assign(cells, -1);
  for (std::size_t i = 0; i < cells; ++i)
    if (mask.tag[i] == CellTag::Unknown) {
      sys.unknown_of_cell[i] = static_cast<int32_t>(sys.cell_of_unknown.size());
      sys.cell_of_unknown.push_back(static_cast<int32_t>(i));
    }
  const std::size_t nu = sys.cell_of_unknown.size();
  if (nu == 0) throw ValidationError("assemble: no unknown cells");

  sys.diag.assign(nu, 0.0);
  sys.rhs.assign(nu, 0.0);

  // Count off-diagonal entries per row, then fill (classic two-pass CSR).
  std::vector<int64_t> count(nu, 0);
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    int32_t ua = sys.unknown_of_cell[mesh.face_a[f]];
    int32_t ub = sys.unknown_of_cell[mesh.face_b[f]];
    if (ua >= 0 && ub >= 0) {
      ++count[ua];
      ++count[ub];
    }
  }
  sys.row_ptr.assign(nu + 1, 0);
  for (std::size_t r = 0; r < nu; ++r) sys.row_ptr[r + 1] = sys.row_ptr[r] + count[r];
  sys.col.assign(static_cast<std::size_t>(sys.row_ptr[nu]), 0);
  sys.val.assign(static_cast<std::size_t>(sys.row_ptr[nu]), 0.0);

  std::vector<int64_t> cursor(sys.row_ptr.begin(), sys.row_ptr.end() - 1);
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    double t = trans[f];
    int32_t a = mesh.face_a[f], b = mesh.face_b[f];
    int32_t ua = sys.unknown_of_cell[a], ub = sys.unknown_of_cell[b];
    if (ua >= 0) sys.diag[ua] += t;
    if (ub >= 0) sys.diag[ub] += t;
    if (ua >= 0 && ub >= 0) {
      sys.col[cursor[ua]] = ub;
      sys.val[cursor[ua]++] = -t;
      sys.col[cursor[ub]] = ua;
      sys.val[cursor[ub]++] = -t;
    } else if (ua >= 0) {
      sys.rhs[ua] += t * mask.value[b];
    } else if (ub >= 0) {
      sys.rhs[ub] += t * mask.value[a];
    }
  }

  for (const Well& w : wells) {
    int32_t u = sys.unknown_of_cell[w.cell];
    if (u < 0)
      throw ValidationError("assemble: well attached to a forced cell");
    sys.diag[u] += w.index;
    sys.rhs[u] += w.index * w.value;
  }
  return sys;
}

double pinned_host_boost(int dim, double rho, double h) {
  const double c_max = 24.0;
  double r0 = well_r0(dim, h);
  if (!(rho > r0)) return 1.0;
  double c;
  if (dim == 2) {
    // log r_eff(c) = log r0 + (pi/2)(1 - 1/c): the four faces carry
    // resistance 1/(4w), and 2 pi (1/4) = pi/2. Exact on the lattice.
    double phi = std::log(rho / r0) / (kPi / 2.0);
    c = (phi >= 1.0) ? c_max : 1.0 / (1.0 - phi);
  } else {
    // h / (4 pi r_eff(c)) = A/c + B with A = 1/6 (six parallel faces) and
    // A + B the Green constant defining r0. Exact on the lattice.
    const double A = 1.0 / 6.0;
    double B = h / (4.0 * kPi * r0) - A;
    double denom = h / (4.0 * kPi * rho) - B;
    c = (denom <= A / c_max) ? c_max : A / denom;
  }
  return std::clamp(c, 1.0, c_max);
}

void boost_cell_faces(const Mesh& mesh, int32_t cell, double factor,
                      std::vector<double>& trans) {
  if (factor == 1.0) return;
  for (std::size_t f = 0; f < mesh.face_count(); ++f)
    if (mesh.face_a[f] == cell || mesh.face_b[f] == cell) trans[f] *= factor;
}

void sharpen_interface(const Mesh& mesh, const CellMask& mask,
                       const std::function<bool(const Vec&)>& forced_region,
                       std::vector<double>& trans) {
  if (mask.tag.size() != mesh.cell_count() ||
      trans.size() != mesh.face_count())
    throw ValidationError("sharpen: mask/transmissibility size mismatch");
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    int32_t a = mesh.face_a[f];
    int32_t b = mesh.face_b[f];
    bool fa = mask.tag[a] == CellTag::Forced;
    bool fb = mask.tag[b] == CellTag::Forced;
    if (fa == fb) continue;
    Vec p = mesh.center[fa ? b : a];  // free side
    Vec q = mesh.center[fa ? a : b];  // forced side
    // Pinned hosts and other mask-only forcings have no surface here.
    if (forced_region(p) || !forced_region(q)) continue;
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 40; ++it) {
      double mid = 0.5 * (lo + hi);
      Vec m = {p[0] + mid * (q[0] - p[0]), p[1] + mid * (q[1] - p[1]),
               p[2] + mid * (q[2] - p[2])};
      (forced_region(m) ? hi : lo) = mid;
    }
    // The boundary value acts at the cut, not at the forced center; the
    // clamp keeps the conductance boost bounded when the surface grazes
    // the free cell's center.
    trans[f] /= std::max(0.5 * (lo + hi), 0.1);
  }
}

std::vector<double> field_from(const CellMask& mask,
                               const DiscreteSystem& system,
                               const std::vector<double>& x) {
  std::vector<double> field(mask.tag.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    int32_t u = system.unknown_of_cell[i];
    field[i] = (u >= 0) ? x[u] : mask.value[i];
  }
  return field;
}

double energy(const Mesh& mesh, const std::vector<double>& trans,
              const std::vector<double>& field,
              const std::vector<Well>& wells) {
  double e = 0.0;
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    double d = field[mesh.face_a[f]] - field[mesh.face_b[f]];
    e += trans[f] * d * d;
  }
  for (const Well& w : wells) {
    double d = field[w.cell] - w.value;
    e += w.index * d * d;
  }
  return e;
}

double flux_through_sphere(const Mesh& mesh, const std::vector<double>& trans,
                           const std::vector<double>& field, const Vec& center,
                           double radius) {
  double total = 0.0;
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    int32_t a = mesh.face_a[f], b = mesh.face_b[f];
    bool a_in = dist(mesh.center[a], center) <= radius;
    bool b_in = dist(mesh.center[b], center) <= radius;
    if (a_in == b_in) continue;
    double inside = a_in ? field[a] : field[b];
    double outside = a_in ? field[b] : field[a];
    total += trans[f] * (inside - outside);
  }
  return total;
}

}  // namespace capinf
