#include "ddc/mesh.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ddc::mesh {

namespace {

// Appends the four crisscross triangles of one square cell.  Corners are
// passed counterclockwise starting at the lower-left one.
void emit_cell(std::vector<Triangle>& tris, int c00, int c10, int c11, int c01,
               int center) {
  tris.push_back({{c00, c10, center}, -1});
  tris.push_back({{c10, c11, center}, -1});
  tris.push_back({{c11, c01, center}, -1});
  tris.push_back({{c01, c00, center}, -1});
}

}  // namespace

Mesh Mesh::from_data(std::vector<Vec2> vertices,
                     std::vector<std::array<int, 3>> triangles) {
  Mesh m;
  m.vertices_ = std::move(vertices);
  m.triangles_.reserve(triangles.size());
  for (const auto& tri : triangles) m.triangles_.push_back({tri, -1});
  m.build_edges();
  return m;
}

Mesh Mesh::unit_square_crisscross(int n) {
  if (n < 1) throw std::invalid_argument("unit_square_crisscross: n >= 1");
  Mesh m;
  const double h = 1.0 / n;
  // Lattice vertices, then one centroid per cell.
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) m.vertices_.push_back({i * h, j * h});
  auto grid = [n](int i, int j) { return j * (n + 1) + i; };
  const int centers0 = (n + 1) * (n + 1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      m.vertices_.push_back({(i + 0.5) * h, (j + 0.5) * h});
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      emit_cell(m.triangles_, grid(i, j), grid(i + 1, j), grid(i + 1, j + 1),
                grid(i, j + 1), centers0 + j * n + i);
  m.build_edges();
  return m;
}

Mesh Mesh::l_shape_crisscross(int n) {
  if (n < 1) throw std::invalid_argument("l_shape_crisscross: n >= 1");
  Mesh m;
  const double h = 1.0 / n;
  // Cells live on the integer lattice [0, 2n)^2 shifted to (-1,1)^2, skipping
  // the upper-right quadrant.  Lattice vertices are created on first use.
  std::map<std::pair<int, int>, int> lattice;
  auto vertex_at = [&](int i, int j) {
    const auto key = std::make_pair(i, j);
    auto it = lattice.find(key);
    if (it != lattice.end()) return it->second;
    const int id = static_cast<int>(m.vertices_.size());
    m.vertices_.push_back({-1.0 + i * h, -1.0 + j * h});
    lattice.emplace(key, id);
    return id;
  };
  for (int j = 0; j < 2 * n; ++j) {
    for (int i = 0; i < 2 * n; ++i) {
      if (i >= n && j >= n) continue;  // removed quadrant [0,1]^2
      const int c00 = vertex_at(i, j);
      const int c10 = vertex_at(i + 1, j);
      const int c11 = vertex_at(i + 1, j + 1);
      const int c01 = vertex_at(i, j + 1);
      const int center = static_cast<int>(m.vertices_.size());
      m.vertices_.push_back({-1.0 + (i + 0.5) * h, -1.0 + (j + 0.5) * h});
      emit_cell(m.triangles_, c00, c10, c11, c01, center);
    }
  }
  m.build_edges();
  return m;
}

void Mesh::build_edges() {
  edge_vertices_.clear();
  tri_edges_.assign(triangles_.size(), {-1, -1, -1});
  edge_tri_count_.clear();
  std::map<std::pair<int, int>, int> edge_of;
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& v = triangles_[t].v;
    for (int lv = 0; lv < 3; ++lv) {
      int a = v[(lv + 1) % 3];
      int b = v[(lv + 2) % 3];
      if (a > b) std::swap(a, b);
      const auto key = std::make_pair(a, b);
      auto it = edge_of.find(key);
      int e;
      if (it == edge_of.end()) {
        e = static_cast<int>(edge_vertices_.size());
        edge_vertices_.push_back({a, b});
        edge_tri_count_.push_back(0);
        edge_of.emplace(key, e);
      } else {
        e = it->second;
      }
      tri_edges_[t][lv] = e;
      ++edge_tri_count_[e];
    }
  }
  edge_tag_.assign(edge_vertices_.size(), 0);
#ifndef NDEBUG
  for (std::size_t t = 0; t < triangles_.size(); ++t)
    assert(area(static_cast<int>(t)) > 0.0 && "triangle orientation flipped");
  for (int c : edge_tri_count_) assert(c == 1 || c == 2);
#endif
}

Mesh Mesh::refine_red() const {
  Mesh fine;
  fine.vertices_ = vertices_;
  // One new vertex per coarse edge, id = old vertex count + edge id.
  const int nv = num_vertices();
  for (int e = 0; e < num_edges(); ++e) {
    const Vec2 a = vertices_[edge_vertices_[e][0]];
    const Vec2 b = vertices_[edge_vertices_[e][1]];
    fine.vertices_.push_back({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)});
  }
  for (int t = 0; t < num_triangles(); ++t) {
    const auto& v = triangles_[t].v;
    // Midpoint opposite local vertex lv sits on local edge lv.
    const int m0 = nv + tri_edges_[t][0];
    const int m1 = nv + tri_edges_[t][1];
    const int m2 = nv + tri_edges_[t][2];
    fine.triangles_.push_back({{v[0], m2, m1}, t});
    fine.triangles_.push_back({{v[1], m0, m2}, t});
    fine.triangles_.push_back({{v[2], m1, m0}, t});
    fine.triangles_.push_back({{m0, m1, m2}, t});
  }
  fine.build_edges();
  // Tags are inherited: a fine boundary edge lies inside a coarse boundary
  // edge and shares its midpoint classification; recover the parent edge via
  // matching endpoints (one endpoint is the coarse edge midpoint vertex).
  for (int e = 0; e < fine.num_edges(); ++e) {
    if (!fine.edge_on_boundary(e)) continue;
    const auto [a, b] = fine.edge_vertices_[e];
    const int mid = std::max(a, b);  // the midpoint vertex has the larger id
    if (mid < nv) continue;          // cannot happen for a red-refined mesh
    fine.edge_tag_[e] = edge_tag_[mid - nv];
  }
  return fine;
}

std::array<Vec2, 3> Mesh::triangle_vertices(int t) const {
  const auto& v = triangles_[t].v;
  return {vertices_[v[0]], vertices_[v[1]], vertices_[v[2]]};
}

double Mesh::edge_length(int e) const {
  const auto [a, b] = edge_vertices_[e];
  return norm(vertices_[b] - vertices_[a]);
}

Vec2 Mesh::edge_tangent(int e) const {
  const auto [a, b] = edge_vertices_[e];
  const Vec2 d = vertices_[b] - vertices_[a];
  return (1.0 / norm(d)) * d;
}

Vec2 Mesh::edge_normal(int e) const {
  const Vec2 t = edge_tangent(e);
  return {t.y, -t.x};
}

Vec2 Mesh::outward_normal(int t, int lv) const {
  const auto& v = triangles_[t].v;
  const Vec2 a = vertices_[v[(lv + 1) % 3]];
  const Vec2 b = vertices_[v[(lv + 2) % 3]];
  const Vec2 opp = vertices_[v[lv]];
  Vec2 n = perp(b - a);
  n = (1.0 / norm(n)) * n;
  // Flip if pointing toward the opposite vertex.
  const Vec2 mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  if (dot(n, opp - mid) > 0.0) n = -n;
  return n;
}

void Mesh::tag_boundary(const std::function<int(Vec2)>& classify) {
  for (int e = 0; e < num_edges(); ++e) {
    if (!edge_on_boundary(e)) continue;
    const auto [a, b] = edge_vertices_[e];
    const Vec2 mid{0.5 * (vertices_[a].x + vertices_[b].x),
                   0.5 * (vertices_[a].y + vertices_[b].y)};
    edge_tag_[e] = classify(mid);
  }
}

Vec2 Mesh::map_to_physical(int t, double xi, double eta) const {
  const auto v = triangle_vertices(t);
  return {v[0].x + (v[1].x - v[0].x) * xi + (v[2].x - v[0].x) * eta,
          v[0].y + (v[1].y - v[0].y) * xi + (v[2].y - v[0].y) * eta};
}

Mat2 Mesh::jacobian(int t) const {
  const auto v = triangle_vertices(t);
  return {v[1].x - v[0].x, v[2].x - v[0].x,  //
          v[1].y - v[0].y, v[2].y - v[0].y};
}

double Mesh::area(int t) const { return 0.5 * det(jacobian(t)); }

double Mesh::total_area() const {
  double s = 0.0;
  for (int t = 0; t < num_triangles(); ++t) s += area(t);
  return s;
}

double Mesh::h_max() const {
  double h = 0.0;
  for (int e = 0; e < num_edges(); ++e) h = std::max(h, edge_length(e));
  return h;
}

}  // namespace ddc::mesh
