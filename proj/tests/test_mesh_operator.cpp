#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "capinf/discrete.hpp"
#include "capinf/mesh.hpp"
#include "capinf/solver.hpp"

using namespace capinf;

namespace {

double linear_field(const Vec& x) {
  return 2.0 * x[0] - 3.0 * x[1] + 0.5 * x[2] + 1.0;
}

std::vector<double> sample_at_centers(const Mesh& mesh, double (*f)(const Vec&)) {
  std::vector<double> out(mesh.cell_count());
  for (std::size_t i = 0; i < mesh.cell_count(); ++i) out[i] = f(mesh.center[i]);
  return out;
}

}  // namespace

TEST_CASE("uniform grid: counts, spacing, centers, volumes") {
  Mesh m3 = build_uniform_grid(3, 1.0, 4);
  CHECK(m3.cell_count() == 64);
  CHECK(m3.face_count() == 3 * 16 * 3);  // dim * m^2 * (m-1)
  CHECK(m3.levels.size() == 1);
  CHECK(m3.h[0] == doctest::Approx(0.5));
  CHECK(m3.cell_volume(0) == doctest::Approx(0.125));
  // First cell sits at the lower corner.
  CHECK(m3.center[0][0] == doctest::Approx(-0.75));
  CHECK(m3.center[0][1] == doctest::Approx(-0.75));
  CHECK(m3.center[0][2] == doctest::Approx(-0.75));

  Mesh m2 = build_uniform_grid(2, 3.0, 6);
  CHECK(m2.cell_count() == 36);
  CHECK(m2.face_count() == 2 * 6 * 5);
  CHECK(m2.h[0] == doctest::Approx(1.0));
  CHECK(m2.cell_volume(0) == doctest::Approx(1.0));
  for (std::size_t i = 0; i < m2.cell_count(); ++i) CHECK(m2.center[i][2] == 0.0);

  CHECK_THROWS_AS(build_uniform_grid(4, 1.0, 4), ValidationError);
  CHECK_THROWS_AS(build_uniform_grid(3, 1.0, 5), ValidationError);
  CHECK_THROWS_AS(build_uniform_grid(3, -1.0, 4), ValidationError);
}

TEST_CASE("uniform grid: no cell center or face center hits the origin") {
  for (int m : {4, 8, 16}) {
    Mesh mesh = build_uniform_grid(3, 1.0, m);
    for (std::size_t i = 0; i < mesh.cell_count(); ++i)
      CHECK(norm(mesh.center[i]) > 0.1 / m);
    for (std::size_t f = 0; f < mesh.face_count(); ++f)
      CHECK(norm(mesh.face_center(f)) > 0.1 / m);
  }
}

TEST_CASE("uniform grid: face geometry and face centers") {
  Mesh mesh = build_uniform_grid(3, 1.0, 4);
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    CHECK(mesh.face_geom[f] == doctest::Approx(0.5));  // h^2 / h
    // Face center is the midpoint of the two adjacent cell centers.
    Vec mid = add(mesh.center[mesh.face_a[f]], mesh.center[mesh.face_b[f]]);
    for (int d = 0; d < 3; ++d) mid[d] *= 0.5;
    CHECK(dist(mesh.face_center(f), mid) < 1e-14);
  }
  Mesh flat = build_uniform_grid(2, 1.0, 4);
  for (std::size_t f = 0; f < flat.face_count(); ++f)
    CHECK(flat.face_geom[f] == doctest::Approx(1.0));  // h / h
}

TEST_CASE("locate round-trips every cell center and rejects outside points") {
  for (const Mesh& mesh :
       {build_uniform_grid(3, 1.0, 8), build_uniform_grid(2, 2.0, 12),
        build_telescope_mesh(3, 1.5, 8, 10.0),
        build_telescope_mesh(2, 1.5, 16, 100.0)}) {
    for (std::size_t i = 0; i < mesh.cell_count(); ++i)
      CHECK(mesh.locate(mesh.center[i]) == static_cast<int32_t>(i));
    double outer = mesh.levels.back().box;
    CHECK(mesh.locate({2.0 * outer, 0.0, 0.0}) == -1);
    CHECK(mesh.locate({0.0, -outer - 1.0, 0.0}) == -1);
  }
}

TEST_CASE("telescope mesh: level structure and cell counts") {
  // Boxes 1.5, 3, 6, 12 (first box >= 10 stops the ladder).
  Mesh mesh = build_telescope_mesh(3, 1.5, 8, 10.0);
  REQUIRE(mesh.levels.size() == 4);
  CHECK(mesh.levels[0].box == doctest::Approx(1.5));
  CHECK(mesh.levels[3].box == doctest::Approx(12.0));
  CHECK(mesh.levels[0].h == doctest::Approx(0.375));
  CHECK(mesh.levels[3].h == doctest::Approx(3.0));
  CHECK_FALSE(mesh.levels[0].has_hole);
  CHECK(mesh.levels[1].has_hole);
  // Full box 8^3, then rings of 8^3 - 4^3 cells.
  CHECK(mesh.cell_count() == 512 + 3 * (512 - 64));

  Mesh flat = build_telescope_mesh(2, 1.5, 8, 10.0);
  CHECK(flat.cell_count() == 64 + 3 * (64 - 16));

  CHECK_THROWS_AS(build_telescope_mesh(3, 1.5, 10, 8.0), ValidationError);
  CHECK_THROWS_AS(build_telescope_mesh(3, 1.5, 4, 8.0), ValidationError);
  CHECK_THROWS_AS(build_telescope_mesh(3, 1.5, 16, 1e30), ValidationError);
}

TEST_CASE("telescope mesh: cross-level faces count and geometry") {
  Mesh mesh = build_telescope_mesh(3, 1.5, 8, 10.0);
  std::map<double, int> cross_by_geom;
  int cross = 0;
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    double ha = mesh.h[mesh.face_a[f]], hb = mesh.h[mesh.face_b[f]];
    if (ha == hb) continue;
    ++cross;
    CHECK(std::max(ha, hb) == doctest::Approx(2.0 * std::min(ha, hb)));
    cross_by_geom[mesh.face_geom[f]]++;
  }
  // 2*dim*m^2 fine faces per interface, three interfaces.
  CHECK(cross == 3 * 6 * 64);
  // geom = h_f^2 / (1.5 h_f) = h_f / 1.5 for h_f = 0.375, 0.75, 1.5.
  REQUIRE(cross_by_geom.size() == 3);
  CHECK(cross_by_geom.count(0.25) == 1);
  CHECK(cross_by_geom[0.25] == 384);
  CHECK(cross_by_geom[0.5] == 384);
  CHECK(cross_by_geom[1.0] == 384);
}

TEST_CASE("telescope mesh: cross-level face centers lie on the fine face plane") {
  Mesh mesh = build_telescope_mesh(3, 1.5, 8, 6.0);
  for (std::size_t f = 0; f < mesh.face_count(); ++f) {
    int32_t a = mesh.face_a[f], b = mesh.face_b[f];
    if (mesh.h[a] == mesh.h[b]) continue;
    int32_t fine = mesh.h[a] < mesh.h[b] ? a : b;
    Vec fc = mesh.face_center(f);
    int axis = mesh.face_axis[f];
    CHECK(std::abs(fc[axis] - mesh.center[fine][axis]) ==
          doctest::Approx(0.5 * mesh.h[fine]));
    for (int d = 0; d < 3; ++d)
      if (d != axis) CHECK(fc[d] == doctest::Approx(mesh.center[fine][d]));
  }
}

TEST_CASE("telescope meshes nest: a shorter ladder is a prefix of a longer one") {
  Mesh small = build_telescope_mesh(3, 1.5, 8, 10.0);
  Mesh large = build_telescope_mesh(3, 1.5, 8, 100.0);
  REQUIRE(large.cell_count() > small.cell_count());
  for (std::size_t i = 0; i < small.cell_count(); ++i) {
    CHECK(dist(small.center[i], large.center[i]) == 0.0);
    CHECK(small.h[i] == large.h[i]);
  }
  // Every face of the shorter mesh appears in the longer one with the same
  // geometry factor: truncation keeps a principal submatrix of the operator.
  std::set<std::pair<int32_t, int32_t>> small_faces, large_faces;
  for (std::size_t f = 0; f < small.face_count(); ++f)
    small_faces.insert({std::min(small.face_a[f], small.face_b[f]),
                        std::max(small.face_a[f], small.face_b[f])});
  for (std::size_t f = 0; f < large.face_count(); ++f)
    large_faces.insert({std::min(large.face_a[f], large.face_b[f]),
                        std::max(large.face_a[f], large.face_b[f])});
  for (const auto& fp : small_faces) CHECK(large_faces.count(fp) == 1);
}

TEST_CASE("rasterize marks exactly the half-space half of a symmetric grid") {
  Mesh m3 = build_uniform_grid(3, 1.0, 8);
  auto marks = rasterize(m3, [](const Vec& x) { return x[0] <= 0.0; });
  CHECK(std::count(marks.begin(), marks.end(), 1) == 256);

  Mesh m2 = build_uniform_grid(2, 3.0, 6);
  auto marks2 = rasterize(m2, [](const Vec& x) { return x[0] <= 0.0; });
  CHECK(std::count(marks2.begin(), marks2.end(), 1) == 18);
}

TEST_CASE("probe interpolates linear fields exactly inside a uniform level") {
  Mesh mesh = build_uniform_grid(3, 1.0, 8);
  std::vector<double> field = sample_at_centers(mesh, linear_field);
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> coord(-0.74, 0.74);
  for (int trial = 0; trial < 500; ++trial) {
    Vec x{coord(rng), coord(rng), coord(rng)};
    CHECK(probe_value(mesh, field, x) ==
          doctest::Approx(linear_field(x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(probe_value(mesh, field, {5.0, 0.0, 0.0}), ValidationError);
}

TEST_CASE("probe on a telescope mesh: exact in ring interiors, host fallback") {
  Mesh mesh = build_telescope_mesh(3, 1.5, 8, 10.0);
  std::vector<double> field = sample_at_centers(mesh, linear_field);
  // (4.5, 0.1, -0.2) lives in the third level; its full interpolation stencil
  // stays outside the hole, so the linear field is reproduced exactly.
  Vec inside{4.5, 0.1, -0.2};
  CHECK(probe_value(mesh, field, inside) ==
        doctest::Approx(linear_field(inside)).epsilon(1e-12));
  // (3.2, 0.1, 0.1) is just past the second level's box; part of its stencil
  // falls into the hole, so the probe degrades to the host cell's value.
  Vec edge{3.2, 0.1, 0.1};
  int32_t host = mesh.locate(edge);
  REQUIRE(host >= 0);
  CHECK(probe_value(mesh, field, edge) == doctest::Approx(field[host]));
}

TEST_CASE("transmissibilities sample the weight at face centers") {
  WeightedSpace s = make_space(2, 1.0);
  Mesh mesh = build_uniform_grid(2, 1.0, 4);
  std::vector<double> trans = transmissibilities(s, mesh);
  REQUIRE(trans.size() == mesh.face_count());
  for (std::size_t f = 0; f < mesh.face_count(); ++f)
    CHECK(trans[f] == doctest::Approx(norm(mesh.face_center(f))));  // |x|^1 * 1
}

TEST_CASE("assembled operator reproduces linear harmonic fields exactly") {
  // Unweighted Laplacian (gamma = 0): linear functions are discretely
  // harmonic, so forcing exact boundary values must return the exact field.
  WeightedSpace s = make_space(3, 0.0);
  Mesh mesh = build_uniform_grid(3, 1.0, 8);
  std::vector<double> trans = transmissibilities(s, mesh);
  CellMask mask(mesh.cell_count());
  double edge = 1.0 - mesh.h[0];
  for (std::size_t i = 0; i < mesh.cell_count(); ++i) {
    const Vec& c = mesh.center[i];
    if (std::abs(c[0]) > edge || std::abs(c[1]) > edge || std::abs(c[2]) > edge)
      mask.force(i, linear_field(c));
  }
  REQUIRE(mask.forced_count() > 0);
  DiscreteSystem sys = assemble(mesh, trans, mask, {});
  SolveReport report;
  std::vector<double> x = solve_spd(sys, SolveOptions{}, &report);
  CHECK(report.converged);
  std::vector<double> field = field_from(mask, sys, x);
  for (std::size_t i = 0; i < mesh.cell_count(); ++i)
    CHECK(field[i] == doctest::Approx(linear_field(mesh.center[i])).epsilon(1e-7));
}

TEST_CASE("assembled system is symmetric, an M-matrix, and indexes cleanly") {
  WeightedSpace s = make_space(3, 0.5);
  Mesh mesh = build_telescope_mesh(3, 1.5, 8, 10.0);
  std::vector<double> trans = transmissibilities(s, mesh);
  CellMask mask(mesh.cell_count());
  for (std::size_t i = 0; i < mesh.cell_count(); ++i) {
    double r = norm(mesh.center[i]);
    if (r <= 1.0) mask.force(i, 1.0);
    if (r >= 10.0) mask.force(i, 0.0);
  }
  DiscreteSystem sys = assemble(mesh, trans, mask, {});
  REQUIRE(sys.size() == mesh.cell_count() - mask.forced_count());

  // unknown_of_cell and cell_of_unknown invert each other.
  for (std::size_t u = 0; u < sys.size(); ++u)
    CHECK(sys.unknown_of_cell[sys.cell_of_unknown[u]] ==
          static_cast<int32_t>(u));
  for (std::size_t i = 0; i < mesh.cell_count(); ++i)
    if (sys.unknown_of_cell[i] >= 0)
      CHECK(sys.cell_of_unknown[sys.unknown_of_cell[i]] ==
            static_cast<int32_t>(i));

  std::map<std::pair<int32_t, int32_t>, double> entries;
  for (std::size_t r = 0; r < sys.size(); ++r) {
    CHECK(sys.diag[r] > 0.0);
    double offsum = 0.0;
    for (int64_t e = sys.row_ptr[r]; e < sys.row_ptr[r + 1]; ++e) {
      CHECK(sys.val[e] <= 0.0);
      offsum += sys.val[e];
      entries[{static_cast<int32_t>(r), sys.col[e]}] = sys.val[e];
    }
    // Weak diagonal dominance (strict next to forced cells or wells).
    CHECK(sys.diag[r] + offsum >= -1e-12 * sys.diag[r]);
  }
  for (const auto& [key, v] : entries) {
    auto mirror = entries.find({key.second, key.first});
    REQUIRE(mirror != entries.end());
    CHECK(mirror->second == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("equilibrium flux is conserved across telescope levels") {
  WeightedSpace s = make_space(3, 0.5);
  Mesh mesh = build_telescope_mesh(3, 1.5, 16, 10.0);
  std::vector<double> trans = transmissibilities(s, mesh);
  CellMask mask(mesh.cell_count());
  for (std::size_t i = 0; i < mesh.cell_count(); ++i) {
    double r = norm(mesh.center[i]);
    if (r <= 1.0) mask.force(i, 1.0);
    if (r >= 10.0) mask.force(i, 0.0);
  }
  DiscreteSystem sys = assemble(mesh, trans, mask, {});
  SolveReport report;
  std::vector<double> x = solve_spd(sys, SolveOptions{}, &report);
  std::vector<double> field = field_from(mask, sys, x);

  // Maximum principle: the potential stays within the forced range.
  CHECK(*std::min_element(field.begin(), field.end()) >= -1e-12);
  CHECK(*std::max_element(field.begin(), field.end()) <= 1.0 + 1e-12);

  // The same total flux crosses every separating sphere, whichever levels it
  // cuts through, and equals the Dirichlet energy of the potential.
  double f2 = flux_through_sphere(mesh, trans, field, {0, 0, 0}, 2.0);
  double f4 = flux_through_sphere(mesh, trans, field, {0, 0, 0}, 4.0);
  double f8 = flux_through_sphere(mesh, trans, field, {0, 0, 0}, 8.0);
  double en = energy(mesh, trans, field, {});
  CHECK(f2 > 0.0);
  CHECK(f4 == doctest::Approx(f2).epsilon(1e-6));
  CHECK(f8 == doctest::Approx(f2).epsilon(1e-6));
  CHECK(en == doctest::Approx(f2).epsilon(1e-6));
}

TEST_CASE("well model: validity range and monotone index") {
  WeightedSpace s = make_space(3, 0.0);
  Mesh mesh = build_uniform_grid(3, 1.0, 8);
  double h = mesh.h[0];
  double limit = well_radius_limit(3, h);
  CHECK(limit > 0.0);
  CHECK(limit < h);

  Well w1 = make_well(s, mesh, {{0.625, 0.125, 0.125}, 0.02}, 1.0);
  Well w2 = make_well(s, mesh, {{0.625, 0.125, 0.125}, 0.04}, 1.0);
  CHECK(w1.cell == mesh.locate({0.625, 0.125, 0.125}));
  CHECK(w1.index > 0.0);
  CHECK(w2.index > w1.index);  // a fatter ball couples more strongly
  CHECK(w1.value == 1.0);

  CHECK_THROWS_AS(make_well(s, mesh, {{0.625, 0.125, 0.125}, 1.1 * limit}, 1.0),
                  ValidationError);
  CHECK_THROWS_AS(make_well(s, mesh, {{0.625, 0.125, 0.125}, 0.0}, 1.0),
                  ValidationError);
  CHECK_THROWS_AS(make_well(s, mesh, {{5.0, 0.0, 0.0}, 0.02}, 1.0),
                  ValidationError);

  WeightedSpace s2 = make_space(2, 1.0);
  Mesh mesh2 = build_uniform_grid(2, 1.0, 8);
  Well v1 = make_well(s2, mesh2, {{0.625, 0.125, 0.0}, 0.01}, 1.0);
  Well v2 = make_well(s2, mesh2, {{0.625, 0.125, 0.0}, 0.02}, 1.0);
  CHECK(v1.index > 0.0);
  CHECK(v2.index > v1.index);
}

TEST_CASE("a well on a forced cell is rejected at assembly") {
  WeightedSpace s = make_space(3, 0.0);
  Mesh mesh = build_uniform_grid(3, 1.0, 8);
  std::vector<double> trans = transmissibilities(s, mesh);
  CellMask mask(mesh.cell_count());
  Well w = make_well(s, mesh, {{0.625, 0.125, 0.125}, 0.02}, 1.0);
  mask.force(w.cell, 1.0);
  CHECK_THROWS_AS(assemble(mesh, trans, mask, {w}), ValidationError);
}

TEST_CASE("well energy term enters the energy functional") {
  WeightedSpace s = make_space(3, 0.0);
  Mesh mesh = build_uniform_grid(3, 1.0, 8);
  std::vector<double> trans = transmissibilities(s, mesh);
  std::vector<double> zero(mesh.cell_count(), 0.0);
  Well w = make_well(s, mesh, {{0.625, 0.125, 0.125}, 0.02}, 1.0);
  // Zero field against a value-1 well: energy = index * (0 - 1)^2.
  CHECK(energy(mesh, trans, zero, {w}) == doctest::Approx(w.index));
  CHECK(energy(mesh, trans, zero, {}) == 0.0);
}
