#include "capinf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace capinf {

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 3)
    throw ValidationError("mesh: dim must be 2 or 3");
}

// Lattice index -> flat index within one level (iz == 0 in 2D).
inline std::size_t flat(int m, int ix, int iy, int iz) {
  return static_cast<std::size_t>(ix) +
         static_cast<std::size_t>(m) *
             (static_cast<std::size_t>(iy) +
              static_cast<std::size_t>(m) * static_cast<std::size_t>(iz));
}

// Appends one lattice level. Cells inside the hole (all lattice indices in
// [m/4, 3m/4)) are skipped when has_hole is set.
void append_level(Mesh& mesh, double box, double h, int m, bool has_hole) {
  MeshLevel level;
  level.box = box;
  level.h = h;
  level.m = m;
  level.has_hole = has_hole;
  level.first_cell = mesh.cell_count();

  const int mz = (mesh.dim == 3) ? m : 1;
  const int lo = m / 4, hi = 3 * m / 4;
  level.lut.assign(static_cast<std::size_t>(m) * m * mz, -1);

  for (int iz = 0; iz < mz; ++iz)
    for (int iy = 0; iy < m; ++iy)
      for (int ix = 0; ix < m; ++ix) {
        bool in_hole = has_hole && ix >= lo && ix < hi && iy >= lo && iy < hi &&
                       (mesh.dim == 2 || (iz >= lo && iz < hi));
        if (in_hole) continue;
        level.lut[flat(m, ix, iy, iz)] =
            static_cast<int32_t>(mesh.cell_count());
        Vec c{(ix + 0.5) * h - box, (iy + 0.5) * h - box,
              mesh.dim == 3 ? (iz + 0.5) * h - box : 0.0};
        mesh.center.push_back(c);
        mesh.h.push_back(h);
      }

  // Faces between lattice neighbours within this level.
  const double geom = (mesh.dim == 3) ? h : 1.0;  // h^{dim-1} / h
  const int strides[3] = {1, m, m * m};
  for (int axis = 0; axis < mesh.dim; ++axis)
    for (int iz = 0; iz < mz; ++iz)
      for (int iy = 0; iy < m; ++iy)
        for (int ix = 0; ix < m; ++ix) {
          int idx[3] = {ix, iy, iz};
          if (idx[axis] + 1 >= m) continue;
          std::size_t p = flat(m, ix, iy, iz);
          int32_t a = level.lut[p];
          int32_t b = level.lut[p + strides[axis]];
          if (a < 0 || b < 0) continue;
          mesh.face_a.push_back(a);
          mesh.face_b.push_back(b);
          mesh.face_axis.push_back(static_cast<uint8_t>(axis));
          mesh.face_geom.push_back(geom);
        }

  mesh.levels.push_back(std::move(level));
}

// Connects the outer boundary of levels[l] to the hole boundary of
// levels[l+1]. Each fine boundary face meets exactly one coarse cell; the
// flux uses the fine face area and the actual center distance 1.5 h_fine.
void connect_levels(Mesh& mesh, std::size_t l) {
  const MeshLevel& fine = mesh.levels[l];
  const MeshLevel& coarse = mesh.levels[l + 1];
  const int m = fine.m;
  const double hf = fine.h;
  const double area = (mesh.dim == 3) ? hf * hf : hf;
  const double geom = area / (1.5 * hf);

  for (int axis = 0; axis < mesh.dim; ++axis)
    for (int side = 0; side < 2; ++side) {
      const int fine_d = side ? m - 1 : 0;
      const int coarse_d = side ? 3 * m / 4 : m / 4 - 1;
      // Perpendicular fine indices u (and v in 3D).
      const int vmax = (mesh.dim == 3) ? m : 1;
      for (int v = 0; v < vmax; ++v)
        for (int u = 0; u < m; ++u) {
          int fi[3] = {0, 0, 0}, ci[3] = {0, 0, 0};
          fi[axis] = fine_d;
          ci[axis] = coarse_d;
          int p = 0;
          for (int d = 0; d < mesh.dim; ++d) {
            if (d == axis) continue;
            int fidx = (p == 0) ? u : v;
            fi[d] = fidx;
            ci[d] = m / 4 + fidx / 2;
            ++p;
          }
          int32_t a = fine.lut[flat(m, fi[0], fi[1], fi[2])];
          int32_t b = coarse.lut[flat(m, ci[0], ci[1], ci[2])];
          if (a < 0 || b < 0)
            throw NumericalError("mesh: broken cross-level connectivity");
          mesh.face_a.push_back(a);
          mesh.face_b.push_back(b);
          mesh.face_axis.push_back(static_cast<uint8_t>(axis));
          mesh.face_geom.push_back(geom);
        }
    }
}

}  // namespace

Vec Mesh::face_center(std::size_t f) const {
  int32_t a = face_a[f], b = face_b[f];
  // The face lies on the finer cell's boundary plane.
  int32_t fine = (h[a] <= h[b]) ? a : b;
  int32_t other = (fine == a) ? b : a;
  Vec c = center[fine];
  int axis = face_axis[f];
  double sign = (center[other][axis] > center[fine][axis]) ? 1.0 : -1.0;
  c[axis] += sign * 0.5 * h[fine];
  return c;
}

int32_t Mesh::locate(const Vec& x) const {
  double r = 0.0;  // sup-norm
  for (int d = 0; d < dim; ++d) r = std::max(r, std::abs(x[d]));
  for (const MeshLevel& level : levels) {
    if (r > level.box) continue;  // outside this level's box: look coarser
    int idx[3] = {0, 0, 0};
    for (int d = 0; d < dim; ++d) {
      int i = static_cast<int>(std::floor((x[d] + level.box) / level.h));
      idx[d] = std::clamp(i, 0, level.m - 1);
    }
    int32_t id = level.lut[flat(level.m, idx[0], idx[1], idx[2])];
    if (id >= 0) return id;
    // Inside this level's hole: the point belongs to a finer level, which
    // already failed; sup-norm ties land here. Fall through to coarser
    // levels only if rounding put us past the hole edge.
  }
  return -1;
}

Mesh build_uniform_grid(int dim, double half_width, int cells_per_axis) {
  check_dim(dim);
  if (!(half_width > 0.0))
    throw ValidationError("mesh: half_width must be positive");
  if (cells_per_axis < 2 || cells_per_axis % 2 != 0)
    throw ValidationError("mesh: cells_per_axis must be even and >= 2");

  Mesh mesh;
  mesh.dim = dim;
  double h = 2.0 * half_width / cells_per_axis;
  append_level(mesh, half_width, h, cells_per_axis, /*has_hole=*/false);
  return mesh;
}

Mesh build_telescope_mesh(int dim, double base_half_width, int base_cells,
                          double outer_radius) {
  check_dim(dim);
  if (!(base_half_width > 0.0))
    throw ValidationError("mesh: base_half_width must be positive");
  if (base_cells < 8 || base_cells % 4 != 0)
    throw ValidationError("mesh: base_cells must be divisible by 4 and >= 8");
  if (!(outer_radius >= base_half_width))
    throw ValidationError("mesh: outer_radius must cover the base box");

  int levels = 1;
  while (base_half_width * std::ldexp(1.0, levels - 1) < outer_radius) {
    ++levels;
    if (levels > 48)
      throw ValidationError("mesh: outer_radius too large for base box");
  }

  Mesh mesh;
  mesh.dim = dim;
  double h0 = 2.0 * base_half_width / base_cells;
  for (int l = 0; l < levels; ++l) {
    double scale = std::ldexp(1.0, l);
    append_level(mesh, base_half_width * scale, h0 * scale, base_cells,
                 /*has_hole=*/l > 0);
  }
  for (std::size_t l = 0; l + 1 < mesh.levels.size(); ++l)
    connect_levels(mesh, l);
  return mesh;
}

std::vector<std::uint8_t> rasterize(
    const Mesh& mesh, const std::function<bool(const Vec&)>& member) {
  std::vector<std::uint8_t> marks(mesh.cell_count(), 0);
  for (std::size_t i = 0; i < mesh.cell_count(); ++i)
    marks[i] = member(mesh.center[i]) ? 1 : 0;
  return marks;
}

double probe_value(const Mesh& mesh, const std::vector<double>& field,
                   const Vec& x) {
  int32_t host = mesh.locate(x);
  if (host < 0) throw ValidationError("probe: point outside the mesh");

  // The level owning the host cell (cell ids grow level by level).
  std::size_t li = mesh.levels.size() - 1;
  while (li > 0 && mesh.levels[li].first_cell > static_cast<std::size_t>(host))
    --li;
  const MeshLevel& level = mesh.levels[li];

  int lower[3] = {0, 0, 0};
  double frac[3] = {0.0, 0.0, 0.0};
  for (int d = 0; d < mesh.dim; ++d) {
    double g = (x[d] + level.box) / level.h - 0.5;
    double fl = std::floor(g);
    int j = static_cast<int>(fl);
    double f = g - fl;
    if (j < 0) {
      j = 0;
      f = 0.0;
    } else if (j >= level.m - 1) {
      j = level.m - 1;
      f = 0.0;
    }
    lower[d] = j;
    frac[d] = f;
  }

  double acc = 0.0;
  const int corners = 1 << mesh.dim;
  for (int c = 0; c < corners; ++c) {
    double weight = 1.0;
    int idx[3] = {0, 0, 0};
    for (int d = 0; d < mesh.dim; ++d) {
      bool upper = (c >> d) & 1;
      weight *= upper ? frac[d] : 1.0 - frac[d];
      idx[d] = std::min(lower[d] + (upper ? 1 : 0), level.m - 1);
    }
    if (weight == 0.0) continue;
    int32_t id = level.lut[flat(level.m, idx[0], idx[1], idx[2])];
    if (id < 0) return field[host];  // stencil clipped by a hole: degrade
    acc += weight * field[id];
  }
  return acc;
}

}  // namespace capinf
