#include <cassert>
#include <cmath>
#include <stdexcept>

#include "ddc/fespace.hpp"

namespace ddc::fem {

namespace {

// Barycentric shape functions in the canonical local layout:
//   degree 1: v0 v1 v2
//   degree 2: v0 v1 v2 | e0 e1 e2                     (edge lv: midpoint)
//   degree 3: v0 v1 v2 | e0q0 e0q1 e1q0 e1q1 e2q0 e2q1 | center
// where edge lv joins local vertices a=(lv+1)%3 and b=(lv+2)%3 and q0 is the
// node nearer a (lambda_a = 2/3).

struct ShapeEval {
  double value[10];
  double dlambda[10][3];  // derivative wrt each barycentric coordinate
};

void eval_shapes(int degree, double l0, double l1, double l2, ShapeEval& out) {
  const double l[3] = {l0, l1, l2};
  switch (degree) {
    case 1:
      for (int i = 0; i < 3; ++i) {
        out.value[i] = l[i];
        for (int j = 0; j < 3; ++j) out.dlambda[i][j] = (i == j) ? 1.0 : 0.0;
      }
      break;
    case 2:
      for (int i = 0; i < 3; ++i) {
        out.value[i] = l[i] * (2.0 * l[i] - 1.0);
        for (int j = 0; j < 3; ++j)
          out.dlambda[i][j] = (i == j) ? 4.0 * l[i] - 1.0 : 0.0;
      }
      for (int lv = 0; lv < 3; ++lv) {
        const int a = (lv + 1) % 3, b = (lv + 2) % 3;
        const int s = 3 + lv;
        out.value[s] = 4.0 * l[a] * l[b];
        for (int j = 0; j < 3; ++j) out.dlambda[s][j] = 0.0;
        out.dlambda[s][a] = 4.0 * l[b];
        out.dlambda[s][b] = 4.0 * l[a];
      }
      break;
    case 3:
      for (int i = 0; i < 3; ++i) {
        out.value[i] = 0.5 * l[i] * (3.0 * l[i] - 1.0) * (3.0 * l[i] - 2.0);
        for (int j = 0; j < 3; ++j) out.dlambda[i][j] = 0.0;
        out.dlambda[i][i] = 0.5 * (27.0 * l[i] * l[i] - 18.0 * l[i] + 2.0);
      }
      for (int lv = 0; lv < 3; ++lv) {
        const int a = (lv + 1) % 3, b = (lv + 2) % 3;
        // q0: nearer a (lambda_a = 2/3); q1: nearer b.
        const int s0 = 3 + 2 * lv, s1 = s0 + 1;
        out.value[s0] = 4.5 * l[a] * l[b] * (3.0 * l[a] - 1.0);
        out.value[s1] = 4.5 * l[a] * l[b] * (3.0 * l[b] - 1.0);
        for (int j = 0; j < 3; ++j) {
          out.dlambda[s0][j] = 0.0;
          out.dlambda[s1][j] = 0.0;
        }
        out.dlambda[s0][a] = 4.5 * l[b] * (6.0 * l[a] - 1.0);
        out.dlambda[s0][b] = 4.5 * l[a] * (3.0 * l[a] - 1.0);
        out.dlambda[s1][a] = 4.5 * l[b] * (3.0 * l[b] - 1.0);
        out.dlambda[s1][b] = 4.5 * l[a] * (6.0 * l[b] - 1.0);
      }
      out.value[9] = 27.0 * l[0] * l[1] * l[2];
      out.dlambda[9][0] = 27.0 * l[1] * l[2];
      out.dlambda[9][1] = 27.0 * l[0] * l[2];
      out.dlambda[9][2] = 27.0 * l[0] * l[1];
      break;
    default:
      throw std::invalid_argument("LagrangeSpace supports degrees 1..3");
  }
}

}  // namespace

LagrangeSpace::LagrangeSpace(const mesh::Mesh& mesh, int degree)
    : mesh_(&mesh), degree_(degree) {
  if (degree < 1 || degree > 3)
    throw std::invalid_argument("LagrangeSpace supports degrees 1..3");
  n_cell_dofs_ = (degree + 1) * (degree + 2) / 2;
  const int per_edge = degree - 1;
  const int per_cell = degree == 3 ? 1 : 0;
  n_dofs_ = mesh.num_vertices() + per_edge * mesh.num_edges() +
            per_cell * mesh.num_triangles();
}

int LagrangeSpace::cell_dof(int t, int local) const {
  const auto& tri = mesh_->triangle(t);
  if (local < 3) return tri.v[local];
  const int nv = mesh_->num_vertices();
  if (degree_ == 2) {
    const int lv = local - 3;
    return nv + mesh_->triangle_edge(t, lv);
  }
  // degree 3
  if (local < 9) {
    const int lv = (local - 3) / 2;
    const int q = (local - 3) % 2;  // 0: nearer local a, 1: nearer local b
    const int ga = tri.v[(lv + 1) % 3];
    const int gb = tri.v[(lv + 2) % 3];
    const int e = mesh_->triangle_edge(t, lv);
    // Slot 0 holds the node nearer the lower-numbered global endpoint.
    const int slot = (ga < gb) ? q : 1 - q;
    return nv + 2 * e + slot;
  }
  return nv + 2 * mesh_->num_edges() + t;
}

Vec2 LagrangeSpace::dof_point(int dof) const {
  const int nv = mesh_->num_vertices();
  if (dof < nv) return mesh_->vertex(dof);
  if (degree_ == 2) {
    const int e = dof - nv;
    const auto [a, b] = mesh_->edge_vertices(e);
    const Vec2 pa = mesh_->vertex(a), pb = mesh_->vertex(b);
    return {0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)};
  }
  const int ne = mesh_->num_edges();
  if (dof < nv + 2 * ne) {
    const int e = (dof - nv) / 2;
    const int slot = (dof - nv) % 2;
    const auto [a, b] = mesh_->edge_vertices(e);
    const Vec2 pa = mesh_->vertex(a), pb = mesh_->vertex(b);
    const double s = (slot + 1) / 3.0;  // 1/3 or 2/3 from the lower vertex
    return {pa.x + s * (pb.x - pa.x), pa.y + s * (pb.y - pa.y)};
  }
  const int t = dof - nv - 2 * ne;
  const auto v = mesh_->triangle_vertices(t);
  return {(v[0].x + v[1].x + v[2].x) / 3.0, (v[0].y + v[1].y + v[2].y) / 3.0};
}

void LagrangeSpace::shape_values(double xi, double eta,
                                 std::span<double> values) const {
  assert(static_cast<int>(values.size()) >= n_cell_dofs_);
  ShapeEval ev;
  eval_shapes(degree_, 1.0 - xi - eta, xi, eta, ev);
  for (int i = 0; i < n_cell_dofs_; ++i) values[i] = ev.value[i];
}

void LagrangeSpace::shape_gradients(int t, double xi, double eta,
                                    std::span<Vec2> gradients) const {
  assert(static_cast<int>(gradients.size()) >= n_cell_dofs_);
  ShapeEval ev;
  eval_shapes(degree_, 1.0 - xi - eta, xi, eta, ev);
  // Physical gradients of the barycentric coordinates.
  const Mat2 jinv = inverse(mesh_->jacobian(t));
  // grad lambda = J^{-T} * ref_grad, ref grads: l0 (-1,-1), l1 (1,0), l2 (0,1)
  const Vec2 g1{jinv.a00, jinv.a01};  // J^{-T} (1,0) = first row of J^{-1}
  const Vec2 g2{jinv.a10, jinv.a11};
  const Vec2 g0 = -1.0 * (g1 + g2);
  const Vec2 glambda[3] = {g0, g1, g2};
  for (int i = 0; i < n_cell_dofs_; ++i) {
    Vec2 g{0.0, 0.0};
    for (int j = 0; j < 3; ++j) g = g + ev.dlambda[i][j] * glambda[j];
    gradients[i] = g;
  }
}

std::vector<int> LagrangeSpace::boundary_dofs(
    const std::function<bool(int)>& keep) const {
  std::vector<char> mark(n_dofs_, 0);
  const auto& m = *mesh_;
  for (int e = 0; e < m.num_edges(); ++e) {
    if (!m.edge_on_boundary(e) || !keep(m.edge_tag(e))) continue;
    const auto [a, b] = m.edge_vertices(e);
    mark[a] = mark[b] = 1;
    if (degree_ == 2) mark[m.num_vertices() + e] = 1;
    if (degree_ == 3) {
      mark[m.num_vertices() + 2 * e] = 1;
      mark[m.num_vertices() + 2 * e + 1] = 1;
    }
  }
  std::vector<int> dofs;
  for (int d = 0; d < n_dofs_; ++d)
    if (mark[d]) dofs.push_back(d);
  return dofs;
}

double LagrangeSpace::value(const std::vector<double>& coeffs, int offset,
                            int t, double xi, double eta) const {
  double vals[10];
  shape_values(xi, eta, {vals, 10});
  double s = 0.0;
  for (int i = 0; i < n_cell_dofs_; ++i)
    s += coeffs[offset + cell_dof(t, i)] * vals[i];
  return s;
}

Vec2 LagrangeSpace::gradient(const std::vector<double>& coeffs, int offset,
                             int t, double xi, double eta) const {
  Vec2 grads[10];
  shape_gradients(t, xi, eta, {grads, 10});
  Vec2 s{0.0, 0.0};
  for (int i = 0; i < n_cell_dofs_; ++i)
    s = s + coeffs[offset + cell_dof(t, i)] * grads[i];
  return s;
}

}  // namespace ddc::fem
