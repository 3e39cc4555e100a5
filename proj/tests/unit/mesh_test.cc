#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "ddc/mesh.hpp"

using ddc::Vec2;
using ddc::mesh::Mesh;

TEST_CASE("Crisscross unit square: counts, area, mesh size", "[mesh]") {
  for (int n : {1, 2, 4, 8}) {
    const Mesh m = Mesh::unit_square_crisscross(n);
    CHECK(m.num_vertices() == (n + 1) * (n + 1) + n * n);
    CHECK(m.num_triangles() == 4 * n * n);
    // Euler: V - E + F = 1 for a disk (F = triangles only).
    CHECK(m.num_vertices() - m.num_edges() + m.num_triangles() == 1);
    CHECK(m.total_area() == Catch::Approx(1.0).epsilon(1e-13));
    // Longest edge is the cell side, 1/n (half-diagonals are shorter).
    CHECK(m.h_max() == Catch::Approx(1.0 / n).epsilon(1e-13));
    for (int t = 0; t < m.num_triangles(); ++t) CHECK(m.area(t) > 0.0);
  }
}

TEST_CASE("Crisscross L-shape: counts and area", "[mesh]") {
  for (int n : {1, 2, 4}) {
    const Mesh m = Mesh::l_shape_crisscross(n);
    CHECK(m.num_triangles() == 12 * n * n);
    CHECK(m.num_vertices() - m.num_edges() + m.num_triangles() == 1);
    CHECK(m.total_area() == Catch::Approx(3.0).epsilon(1e-13));
    CHECK(m.h_max() == Catch::Approx(1.0 / n).epsilon(1e-13));
    // Every vertex stays inside the closed L (removed quadrant is open).
    for (int v = 0; v < m.num_vertices(); ++v) {
      const Vec2 p = m.vertex(v);
      const bool in_removed = p.x > 1e-12 && p.y > 1e-12;
      CHECK_FALSE(in_removed);
    }
  }
}

TEST_CASE("Boundary tagging by midpoint classification", "[mesh]") {
  Mesh m = Mesh::unit_square_crisscross(4);
  // Dirichlet (1) on bottom/top, Neumann (2) elsewhere.
  m.tag_boundary([](Vec2 p) {
    return (p.y < 1e-12 || p.y > 1.0 - 1e-12) ? 1 : 2;
  });
  int dirichlet = 0, neumann = 0, interior = 0;
  for (int e = 0; e < m.num_edges(); ++e) {
    if (!m.edge_on_boundary(e)) {
      CHECK(m.edge_tag(e) == 0);
      ++interior;
      continue;
    }
    if (m.edge_tag(e) == 1) ++dirichlet;
    if (m.edge_tag(e) == 2) ++neumann;
  }
  CHECK(dirichlet == 8);
  CHECK(neumann == 8);
  CHECK(interior == m.num_edges() - 16);
}

TEST_CASE("Red refinement halves h, preserves area, inherits tags", "[mesh]") {
  Mesh coarse = Mesh::unit_square_crisscross(2);
  coarse.tag_boundary([](Vec2 p) { return p.x < 1e-12 ? 5 : 9; });
  const Mesh fine = coarse.refine_red();

  CHECK(fine.num_triangles() == 4 * coarse.num_triangles());
  CHECK(fine.h_max() == Catch::Approx(0.5 * coarse.h_max()).epsilon(1e-13));
  CHECK(fine.total_area() == Catch::Approx(coarse.total_area()).epsilon(1e-13));

  // Children point at the correct parent (all vertices inside the parent).
  for (int t = 0; t < fine.num_triangles(); ++t) {
    const int parent = fine.triangle(t).parent;
    REQUIRE(parent == t / 4);
    const auto pv = coarse.triangle_vertices(parent);
    const ddc::Mat2 j = coarse.jacobian(parent);
    const ddc::Mat2 jinv = ddc::inverse(j);
    for (const Vec2 q : fine.triangle_vertices(t)) {
      const Vec2 ref = jinv * (q - pv[0]);
      CHECK(ref.x > -1e-12);
      CHECK(ref.y > -1e-12);
      CHECK(ref.x + ref.y < 1.0 + 1e-12);
    }
  }

  for (int e = 0; e < fine.num_edges(); ++e) {
    if (!fine.edge_on_boundary(e)) continue;
    const auto [a, b] = fine.edge_vertices(e);
    const Vec2 mid{0.5 * (fine.vertex(a).x + fine.vertex(b).x),
                   0.5 * (fine.vertex(a).y + fine.vertex(b).y)};
    CHECK(fine.edge_tag(e) == (mid.x < 1e-12 ? 5 : 9));
  }
}

TEST_CASE("Edge geometry conventions", "[mesh]") {
  const Mesh m = Mesh::unit_square_crisscross(2);
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto [a, b] = m.edge_vertices(e);
    CHECK(a < b);
    const Vec2 t = m.edge_tangent(e);
    const Vec2 n = m.edge_normal(e);
    CHECK(ddc::dot(t, n) == Catch::Approx(0.0).margin(1e-15));
    CHECK(ddc::norm(n) == Catch::Approx(1.0).epsilon(1e-14));
    // n = (t_y, -t_x)
    CHECK(n.x == Catch::Approx(t.y).margin(1e-15));
    CHECK(n.y == Catch::Approx(-t.x).margin(1e-15));
  }
  // Outward normals on the unit square boundary point along the axes.
  for (int t = 0; t < m.num_triangles(); ++t) {
    for (int lv = 0; lv < 3; ++lv) {
      const int e = m.triangle_edge(t, lv);
      if (!m.edge_on_boundary(e)) continue;
      const auto [a, b] = m.edge_vertices(e);
      const Vec2 mid{0.5 * (m.vertex(a).x + m.vertex(b).x),
                     0.5 * (m.vertex(a).y + m.vertex(b).y)};
      const Vec2 out = m.outward_normal(t, lv);
      if (mid.y < 1e-12) CHECK(out.y == Catch::Approx(-1.0));
      if (mid.y > 1.0 - 1e-12) CHECK(out.y == Catch::Approx(1.0));
      if (mid.x < 1e-12) CHECK(out.x == Catch::Approx(-1.0));
      if (mid.x > 1.0 - 1e-12) CHECK(out.x == Catch::Approx(1.0));
    }
  }
}

TEST_CASE("Affine map and jacobian agree with vertices", "[mesh]") {
  const Mesh m = Mesh::l_shape_crisscross(2);
  for (int t = 0; t < m.num_triangles(); t += 7) {
    const auto v = m.triangle_vertices(t);
    const Vec2 p0 = m.map_to_physical(t, 0.0, 0.0);
    const Vec2 p1 = m.map_to_physical(t, 1.0, 0.0);
    const Vec2 p2 = m.map_to_physical(t, 0.0, 1.0);
    CHECK(ddc::norm(p0 - v[0]) < 1e-14);
    CHECK(ddc::norm(p1 - v[1]) < 1e-14);
    CHECK(ddc::norm(p2 - v[2]) < 1e-14);
    CHECK(m.area(t) == Catch::Approx(0.5 * ddc::det(m.jacobian(t))));
  }
}
