#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "capinf/geometry.hpp"
#include "capinf/mesh.hpp"
#include "capinf/weighted_space.hpp"

namespace capinf {

/// Per-face transmissibilities t_f = w(face center, axis) * area / distance.
/// The weight is sampled once at the face center, so the assembled operator
/// is symmetric by construction and an M-matrix (all t_f > 0).
std::vector<double> transmissibilities(const WeightedSpace& space,
                                       const Mesh& mesh);

/// Point source/sink coupling a sub-cell ball to its host cell: an extra
/// diagonal entry index * (u_cell - value)^2 in the energy. The index is the
/// classical steady-state well coupling for a cell of spacing h:
///   2D: 2 pi w / log(r0 / rho),        r0 = 0.2079 h
///   3D: 4 pi w / (1/rho - 1/r0),       r0 = h / (4 pi 0.2527)
/// with w the weight at the ball center. Valid for rho well below r0.
struct Well {
  int32_t cell = -1;
  double index = 0.0;
  double value = 0.0;
};

/// Largest ball radius the coupling accepts (just below r0, where the index
/// stays positive and the series picture remains monotone); larger balls
/// must be rasterized or pinned.
double well_radius_limit(int dim, double h);

Well make_well(const WeightedSpace& space, const Mesh& mesh, const Ball& ball,
               double value);

/// Assembled symmetric positive definite system over the Unknown cells of a
/// mask: A x = b with A = L + diag(well indices), where L is the weighted
/// graph Laplacian restricted to unknowns and b collects forced-neighbour
/// and well contributions. CSR storage, unknown-major.
struct DiscreteSystem {
  std::vector<int64_t> row_ptr;
  std::vector<int32_t> col;
  std::vector<double> val;   // off-diagonal entries (all <= 0)
  std::vector<double> diag;  // row diagonal (includes well indices)
  std::vector<double> rhs;
  std::vector<int32_t> unknown_of_cell;  // -1 for forced cells
  std::vector<int32_t> cell_of_unknown;

  std::size_t size() const { return diag.size(); }
};

DiscreteSystem assemble(const Mesh& mesh, const std::vector<double>& trans,
                        const CellMask& mask, const std::vector<Well>& wells);

/// Sharpens the forced/free interface: wherever a face straddles the forced
/// region's true surface, the boundary value actually applies at the surface
/// crossing, not at the forced cell's center. Bisecting the indicator along
/// the center-to-center segment and rescaling the face conductance by
/// 1/(cut fraction) moves the first-order staircase bias of condenser
/// values down by an order of magnitude. Faces whose forced cell lies
/// outside the region (pinned feature hosts) are left untouched.
void sharpen_interface(const Mesh& mesh, const CellMask& mask,
                       const std::function<bool(const Vec&)>& forced_region,
                       std::vector<double>& trans);

/// Face-scale factor for a pinned host cell standing in for a ball of
/// radius rho too large for the well model yet invisible to the raster.
/// Seen from one node, the lattice is exactly the 2*dim adjacent faces in
/// parallel, in series with a fixed spreading resistance (the symmetric
/// injection excites only the radial mode), so scaling those faces by a
/// closed-form factor tunes the node's equivalent radius to rho. Returns 1
/// for rho at or below the equivalent lattice radius r0 — continuous with
/// the well coupling — and saturates at a fixed cap just under the raster
/// threshold, beyond which a ball always covers some cell center.
double pinned_host_boost(int dim, double rho, double h);

/// Multiplies every face of `cell` by `factor`.
void boost_cell_faces(const Mesh& mesh, int32_t cell, double factor,
                      std::vector<double>& trans);

/// Expands an unknown-vector to a full per-cell field (forced values kept).
std::vector<double> field_from(const CellMask& mask,
                               const DiscreteSystem& system,
                               const std::vector<double>& x);

/// Dirichlet energy of a per-cell field:
///   sum_f t_f (u_a - u_b)^2 + sum_w index_w (u_cell - value_w)^2.
double energy(const Mesh& mesh, const std::vector<double>& trans,
              const std::vector<double>& field, const std::vector<Well>& wells);

/// Net outward flux through the sphere |x - center| = radius, summed over
/// faces whose endpoints' centers lie on opposite sides:
///   sum t_f (u_inside - u_outside).
/// For an equilibrium field this equals the total source strength enclosed,
/// which for a capacitary potential is the capacity itself.
double flux_through_sphere(const Mesh& mesh, const std::vector<double>& trans,
                           const std::vector<double>& field, const Vec& center,
                           double radius);

}  // namespace capinf
