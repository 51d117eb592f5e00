#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "capinf/common.hpp"
#include "capinf/geometry.hpp"

namespace capinf {

/// Cell-centered finite-volume mesh over an axis-aligned region, organised as
/// uniform lattice levels. A one-level mesh is the plain uniform grid on
/// [-L, L]^n with m cells per axis, spacing h = 2L/m and cell centers at
/// (i + 1/2) h - L per axis; m is even, so no cell center and no face center
/// ever hits the origin (the weight's singular point).
///
/// Multi-level ("telescope") meshes add coarser shells: level l covers the
/// box [-B0*2^l, B0*2^l]^n minus the previous box, at spacing h0*2^l. The
/// 2:1 nesting is exact, hanging faces get a two-point flux, and truncating
/// the outer levels yields a principal submatrix of any larger mesh of the
/// same family — which is what makes domain exhaustion monotone discretely.
struct MeshLevel {
  double box = 0.0;      // half-width of this level's bounding box
  double h = 0.0;        // cell spacing
  int m = 0;             // lattice cells per axis
  bool has_hole = false; // true if the central quarter-lattice is cut out
  std::size_t first_cell = 0;
  std::vector<int32_t> lut;  // lattice index -> global cell id, -1 in holes
};

struct Mesh {
  int dim = 0;
  std::vector<Vec> center;   // per cell
  std::vector<double> h;     // per cell spacing (cells are cubes)
  std::vector<MeshLevel> levels;

  // Interior faces (adjacent cell pairs, including cross-level pairs).
  std::vector<int32_t> face_a, face_b;
  std::vector<uint8_t> face_axis;
  std::vector<double> face_geom;  // face area / center distance

  std::size_t cell_count() const { return center.size(); }
  std::size_t face_count() const { return face_a.size(); }
  double cell_volume(std::size_t i) const {
    double v = h[i] * h[i];
    return dim == 3 ? v * h[i] : v;
  }

  /// Geometric center of face f: on the shared plane, at the finer cell's
  /// perpendicular coordinates. Never the origin.
  Vec face_center(std::size_t f) const;

  /// Global id of the cell containing x (ties at level boundaries go to the
  /// finer level), or -1 if x is outside the mesh.
  int32_t locate(const Vec& x) const;
};

/// Uniform grid on [-half_width, half_width]^dim; cells_per_axis must be even.
Mesh build_uniform_grid(int dim, double half_width, int cells_per_axis);

/// Telescope mesh: innermost full box of half-width base_half_width with
/// base_cells per axis (divisible by 4), plus doubling shells until the box
/// covers outer_radius.
Mesh build_telescope_mesh(int dim, double base_half_width, int base_cells,
                          double outer_radius);

/// Marks cells whose center satisfies the predicate (1) or not (0).
std::vector<std::uint8_t> rasterize(const Mesh& mesh,
                                    const std::function<bool(const Vec&)>& member);

/// Multilinear interpolation of a per-cell field at x, using the lattice
/// level that contains x. Falls back to the host cell's value when a corner
/// of the interpolation stencil is missing (level interface or hole), so it
/// is always defined inside the mesh; throws outside.
double probe_value(const Mesh& mesh, const std::vector<double>& field,
                   const Vec& x);

/// Dirichlet mask: Unknown cells carry no value; Forced cells carry their
/// boundary value. "Forced one"/"forced zero" are the capacity special case.
enum class CellTag : std::uint8_t { Unknown = 0, Forced = 1 };

struct CellMask {
  std::vector<CellTag> tag;
  std::vector<double> value;

  explicit CellMask(std::size_t cells = 0)
      : tag(cells, CellTag::Unknown), value(cells, 0.0) {}
  void force(std::size_t i, double v) {
    tag[i] = CellTag::Forced;
    value[i] = v;
  }
  std::size_t forced_count() const {
    std::size_t c = 0;
    for (CellTag t : tag) c += (t == CellTag::Forced);
    return c;
  }
};

}  // namespace capinf
