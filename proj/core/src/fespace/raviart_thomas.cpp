#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ddc/fespace.hpp"
#include "ddc/quadrature.hpp"

namespace ddc::fem {

double shifted_legendre(int q, double s) {
  switch (q) {
    case 0:
      return 1.0;
    case 1:
      return 2.0 * s - 1.0;
    case 2:
      return (6.0 * s - 6.0) * s + 1.0;
    case 3:
      return ((20.0 * s - 30.0) * s + 12.0) * s - 1.0;
    default:
      throw std::invalid_argument("shifted_legendre: order out of range");
  }
}

namespace {

// In-place inversion (Gauss-Jordan with partial pivoting) of a small dense
// row-major matrix.  Throws on numerical singularity, which for the moment
// matrix would mean a broken dof set.
void invert_dense(std::vector<double>& a, int n) {
  std::vector<double> inv(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i) * n + i] = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double mag = std::abs(a[static_cast<std::size_t>(col) * n + col]);
    for (int r = col + 1; r < n; ++r) {
      const double m = std::abs(a[static_cast<std::size_t>(r) * n + col]);
      if (m > mag) {
        mag = m;
        pivot = r;
      }
    }
    if (mag < 1e-200)
      throw std::runtime_error("RT moment matrix is singular");
    if (pivot != col)
      for (int c = 0; c < n; ++c) {
        std::swap(a[static_cast<std::size_t>(col) * n + c],
                  a[static_cast<std::size_t>(pivot) * n + c]);
        std::swap(inv[static_cast<std::size_t>(col) * n + c],
                  inv[static_cast<std::size_t>(pivot) * n + c]);
      }
    const double inv_pivot = 1.0 / a[static_cast<std::size_t>(col) * n + col];
    for (int c = 0; c < n; ++c) {
      a[static_cast<std::size_t>(col) * n + c] *= inv_pivot;
      inv[static_cast<std::size_t>(col) * n + c] *= inv_pivot;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[static_cast<std::size_t>(r) * n + col];
      if (f == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        a[static_cast<std::size_t>(r) * n + c] -=
            f * a[static_cast<std::size_t>(col) * n + c];
        inv[static_cast<std::size_t>(r) * n + c] -=
            f * inv[static_cast<std::size_t>(col) * n + c];
      }
    }
  }
  a.swap(inv);
}

}  // namespace

RTSpace::RTSpace(const mesh::Mesh& mesh, int order)
    : mesh_(&mesh), order_(order) {
  if (order < 0 || order > 2)
    throw std::invalid_argument("RTSpace supports orders 0..2");
  const int k = order;
  n_cell_dofs_ = (k + 1) * (k + 3);
  n_dofs_ = (k + 1) * mesh.num_edges() + k * (k + 1) * mesh.num_triangles();

  // Monomial layout: (p,0) and (0,p) for all scalar monomials p of degree
  // <= k, then (z,e)*p for homogeneous monomials p of degree exactly k.
  for (int deg = 0; deg <= k; ++deg)
    for (int b = 0; b <= deg; ++b) monomials_.push_back({0, deg - b, b});
  for (int deg = 0; deg <= k; ++deg)
    for (int b = 0; b <= deg; ++b) monomials_.push_back({1, deg - b, b});
  for (int b = 0; b <= k; ++b) monomials_.push_back({2, k - b, b});
  assert(static_cast<int>(monomials_.size()) == n_cell_dofs_);

  const int nt = mesh.num_triangles();
  const int dim = n_cell_dofs_;
  scale_.resize(nt);
  centroid_.resize(nt);
  coeffs_.assign(static_cast<std::size_t>(nt) * dim * dim, 0.0);

  for (int t = 0; t < nt; ++t) {
    const auto v = mesh.triangle_vertices(t);
    centroid_[t] = {(v[0].x + v[1].x + v[2].x) / 3.0,
                    (v[0].y + v[1].y + v[2].y) / 3.0};
    scale_[t] = std::sqrt(mesh.area(t));

    // Moment matrix G with G(row, m) = functional_row(monomial_m).
    std::vector<double> g(static_cast<std::size_t>(dim) * dim, 0.0);
    int row = 0;
    for (int lv = 0; lv < 3; ++lv) {
      for (int q = 0; q <= k; ++q, ++row) {
        for (int m = 0; m < dim; ++m) {
          const Monomial& mono = monomials_[m];
          auto f = [&](Vec2 x) { return monomial_value(mono, scaled_coords(t, x)); };
          g[static_cast<std::size_t>(row) * dim + m] = edge_moment(t, lv, q, f);
        }
      }
    }
    for (int im = 0; im < k * (k + 1); ++im, ++row) {
      for (int m = 0; m < dim; ++m) {
        const Monomial& mono = monomials_[m];
        auto f = [&](Vec2 x) { return monomial_value(mono, scaled_coords(t, x)); };
        g[static_cast<std::size_t>(row) * dim + m] = interior_moment(t, im, f);
      }
    }
    assert(row == dim);
    invert_dense(g, dim);
    // Column i of G^{-1} holds the monomial coefficients of shape i; G^{-1}
    // is row-major, so coefficient of monomial m in shape i is g[m*dim + i].
    for (int m = 0; m < dim; ++m)
      for (int i = 0; i < dim; ++i)
        coeffs_[(static_cast<std::size_t>(t) * dim + m) * dim + i] =
            g[static_cast<std::size_t>(m) * dim + i];
  }
}

Vec2 RTSpace::scaled_coords(int t, Vec2 x) const {
  const double inv = 1.0 / scale_[t];
  return {(x.x - centroid_[t].x) * inv, (x.y - centroid_[t].y) * inv};
}

Vec2 RTSpace::monomial_value(const Monomial& m, Vec2 z) const {
  const double p = std::pow(z.x, m.a) * std::pow(z.y, m.b);
  switch (m.type) {
    case 0:
      return {p, 0.0};
    case 1:
      return {0.0, p};
    default:
      return {z.x * p, z.y * p};
  }
}

double RTSpace::monomial_divergence(const Monomial& m, Vec2 z,
                                    double inv_h) const {
  double d = 0.0;
  switch (m.type) {
    case 0:
      d = m.a == 0 ? 0.0 : m.a * std::pow(z.x, m.a - 1) * std::pow(z.y, m.b);
      break;
    case 1:
      d = m.b == 0 ? 0.0 : m.b * std::pow(z.x, m.a) * std::pow(z.y, m.b - 1);
      break;
    default:
      // div[(z1, z2) z1^a z2^b] = (a + b + 2) z1^a z2^b
      d = (m.a + m.b + 2) * std::pow(z.x, m.a) * std::pow(z.y, m.b);
      break;
  }
  return d * inv_h;
}

double RTSpace::edge_moment(int t, int lv, int q,
                            const std::function<Vec2(Vec2)>& f) const {
  const int e = mesh_->triangle_edge(t, lv);
  const auto [a, b] = mesh_->edge_vertices(e);
  const Vec2 pa = mesh_->vertex(a), pb = mesh_->vertex(b);
  const Vec2 n = mesh_->edge_normal(e);
  const double len = mesh_->edge_length(e);
  // Construction needs degree 2k+1 along the edge; interpolation of general
  // fields just reuses the largest stored rule.
  const auto rule = quad::line_rule(quad::max_line_degree());
  double s = 0.0;
  for (int i = 0; i < rule.size; ++i) {
    const double sp = rule.points[i].t;
    const Vec2 x{pa.x + sp * (pb.x - pa.x), pa.y + sp * (pb.y - pa.y)};
    s += rule.points[i].w * dot(f(x), n) * shifted_legendre(q, sp);
  }
  return s * len;
}

double RTSpace::interior_moment(int t, int m,
                                const std::function<Vec2(Vec2)>& f) const {
  // Interior moment m: scalar monomial index (m / 2) of degree <= k-1 paired
  // with coordinate direction (m % 2).
  const int sm = m / 2;
  const int dir = m % 2;
  // Decode scalar monomial sm in the (deg, b) ordering used everywhere.
  int deg = 0, count = 0;
  while (count + deg + 1 <= sm) {
    count += deg + 1;
    ++deg;
  }
  const int b = sm - count;
  const int a = deg - b;

  const auto rule = quad::triangle_rule(quad::max_triangle_degree());
  const double two_area = 2.0 * mesh_->area(t);
  double s = 0.0;
  for (int i = 0; i < rule.size; ++i) {
    const auto& qp = rule.points[i];
    const Vec2 x = mesh_->map_to_physical(t, qp.x, qp.y);
    const Vec2 z = scaled_coords(t, x);
    const double p = std::pow(z.x, a) * std::pow(z.y, b);
    const Vec2 fv = f(x);
    s += qp.w * p * (dir == 0 ? fv.x : fv.y);
  }
  return s * two_area;
}

int RTSpace::cell_dof(int t, int local) const {
  const int k = order_;
  if (local < 3 * (k + 1)) {
    const int lv = local / (k + 1);
    const int q = local % (k + 1);
    return mesh_->triangle_edge(t, lv) * (k + 1) + q;
  }
  const int im = local - 3 * (k + 1);
  return (k + 1) * mesh_->num_edges() + t * k * (k + 1) + im;
}

void RTSpace::shape_values(int t, double xi, double eta,
                           std::span<Vec2> values) const {
  const int dim = n_cell_dofs_;
  assert(static_cast<int>(values.size()) >= dim);
  const Vec2 x = mesh_->map_to_physical(t, xi, eta);
  const Vec2 z = scaled_coords(t, x);
  for (int i = 0; i < dim; ++i) values[i] = {0.0, 0.0};
  for (int m = 0; m < dim; ++m) {
    const Vec2 mv = monomial_value(monomials_[m], z);
    const double* c = &coeffs_[(static_cast<std::size_t>(t) * dim + m) * dim];
    for (int i = 0; i < dim; ++i) values[i] = values[i] + c[i] * mv;
  }
}

void RTSpace::shape_divergences(int t, double xi, double eta,
                                std::span<double> divergences) const {
  const int dim = n_cell_dofs_;
  assert(static_cast<int>(divergences.size()) >= dim);
  const Vec2 x = mesh_->map_to_physical(t, xi, eta);
  const Vec2 z = scaled_coords(t, x);
  const double inv_h = 1.0 / scale_[t];
  for (int i = 0; i < dim; ++i) divergences[i] = 0.0;
  for (int m = 0; m < dim; ++m) {
    const double md = monomial_divergence(monomials_[m], z, inv_h);
    if (md == 0.0) continue;
    const double* c = &coeffs_[(static_cast<std::size_t>(t) * dim + m) * dim];
    for (int i = 0; i < dim; ++i) divergences[i] += c[i] * md;
  }
}

std::vector<double> RTSpace::interpolate(
    const std::function<Vec2(Vec2)>& f) const {
  const int k = order_;
  std::vector<double> dofs(n_dofs_, 0.0);
  for (int t = 0; t < mesh_->num_triangles(); ++t) {
    for (int lv = 0; lv < 3; ++lv) {
      const int e = mesh_->triangle_edge(t, lv);
      for (int q = 0; q <= k; ++q)
        dofs[e * (k + 1) + q] = edge_moment(t, lv, q, f);
    }
    for (int im = 0; im < k * (k + 1); ++im)
      dofs[(k + 1) * mesh_->num_edges() + t * k * (k + 1) + im] =
          interior_moment(t, im, f);
  }
  return dofs;
}

Vec2 RTSpace::value(const std::vector<double>& coeffs, int offset, int t,
                    double xi, double eta) const {
  Vec2 vals[15];
  shape_values(t, xi, eta, {vals, 15});
  Vec2 s{0.0, 0.0};
  for (int i = 0; i < n_cell_dofs_; ++i)
    s = s + coeffs[offset + cell_dof(t, i)] * vals[i];
  return s;
}

double RTSpace::divergence(const std::vector<double>& coeffs, int offset,
                           int t, double xi, double eta) const {
  double divs[15];
  shape_divergences(t, xi, eta, {divs, 15});
  double s = 0.0;
  for (int i = 0; i < n_cell_dofs_; ++i)
    s += coeffs[offset + cell_dof(t, i)] * divs[i];
  return s;
}

}  // namespace ddc::fem
