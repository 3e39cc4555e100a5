#pragma once

// Triangulations of the unit square and of the L-shaped domain
// (-1,1)^2 \ [0,1]^2, built as "crisscross" grids: every square cell is split
// into four triangles through its centroid.  Uniform red refinement (edge
// midpoint subdivision) halves every edge length exactly and records the
// parent triangle, so a field on a coarse mesh can be evaluated on any
// descendant mesh through the parent chain.

#include <array>
#include <functional>
#include <vector>

#include "ddc/types.hpp"

namespace ddc::mesh {

struct Triangle {
  std::array<int, 3> v;   // vertex ids, counterclockwise
  int parent = -1;        // triangle id in the mesh this one was refined from
};

class Mesh {
 public:
  // n x n cells, 4 triangles each, on (0,1)^2.
  static Mesh unit_square_crisscross(int n);
  // Three unit blocks ([-1,0]x[-1,0], [0,1]x[-1,0], [-1,0]x[0,1]), each
  // meshed with n x n crisscross cells.
  static Mesh l_shape_crisscross(int n);

  // Arbitrary triangulation from raw vertex/connectivity data (triangles
  // counterclockwise).  Used for tiny hand-built fixtures.
  static Mesh from_data(std::vector<Vec2> vertices,
                        std::vector<std::array<int, 3>> triangles);

  // Uniform red refinement: each triangle splits into 4 via edge midpoints.
  // Children carry `parent`; boundary tags are inherited from parent edges.
  Mesh refine_red() const;

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edge_vertices_.size()); }

  Vec2 vertex(int v) const { return vertices_[v]; }
  const Triangle& triangle(int t) const { return triangles_[t]; }
  std::array<Vec2, 3> triangle_vertices(int t) const;

  // Global edge id of the edge opposite local vertex `lv` (i.e. local edge 0
  // joins local vertices 1 and 2).
  int triangle_edge(int t, int lv) const { return tri_edges_[t][lv]; }
  // Endpoints with a < b in global vertex numbering; every quantity that
  // depends on edge orientation (tangent, normal, edge dof order) follows
  // this a -> b direction, which is identical in both adjacent triangles.
  std::array<int, 2> edge_vertices(int e) const { return edge_vertices_[e]; }
  double edge_length(int e) const;
  Vec2 edge_tangent(int e) const;  // unit vector from vertex a to vertex b
  // Unit normal obtained by rotating the tangent clockwise: n = (t_y, -t_x).
  Vec2 edge_normal(int e) const;
  bool edge_on_boundary(int e) const { return edge_tri_count_[e] == 1; }

  // Outward unit normal of local edge `lv` of triangle t (boundary terms).
  Vec2 outward_normal(int t, int lv) const;

  // Boundary tags: 0 on interior edges.  tag_boundary assigns
  // classify(midpoint) to each boundary edge.
  int edge_tag(int e) const { return edge_tag_[e]; }
  void tag_boundary(const std::function<int(Vec2)>& classify);

  // Affine map from the reference triangle (0,0)-(1,0)-(0,1).
  Vec2 map_to_physical(int t, double xi, double eta) const;
  // Columns are the edge vectors v1 - v0 and v2 - v0.
  Mat2 jacobian(int t) const;

  double area(int t) const;
  double total_area() const;
  double h_max() const;  // longest edge in the mesh

 private:
  void build_edges();

  std::vector<Vec2> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<std::array<int, 2>> edge_vertices_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<int> edge_tri_count_;
  std::vector<int> edge_tag_;
};

}  // namespace ddc::mesh
