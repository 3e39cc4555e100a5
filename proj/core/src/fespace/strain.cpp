#include <cassert>
#include <cmath>
#include <stdexcept>

#include "ddc/fespace.hpp"

namespace ddc::fem {

StrainSpace::StrainSpace(const mesh::Mesh& mesh, int order)
    : mesh_(&mesh), order_(order) {
  if (order < 0 || order > 2)
    throw std::invalid_argument("StrainSpace supports orders 0..2");
  n_cell_dofs_ = (order + 1) * (order + 2);  // 2 tensor modes per monomial
  n_dofs_ = n_cell_dofs_ * mesh.num_triangles();
  scale_.resize(mesh.num_triangles());
  centroid_.resize(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto v = mesh.triangle_vertices(t);
    centroid_[t] = {(v[0].x + v[1].x + v[2].x) / 3.0,
                    (v[0].y + v[1].y + v[2].y) / 3.0};
    scale_[t] = std::sqrt(mesh.area(t));
  }
}

void StrainSpace::shape_values(int t, double xi, double eta,
                               std::span<Mat2> values) const {
  assert(static_cast<int>(values.size()) >= n_cell_dofs_);
  const Vec2 x = mesh_->map_to_physical(t, xi, eta);
  const double inv = 1.0 / scale_[t];
  const double zx = (x.x - centroid_[t].x) * inv;
  const double zy = (x.y - centroid_[t].y) * inv;
  int m = 0;
  for (int deg = 0; deg <= order_; ++deg) {
    for (int b = 0; b <= deg; ++b, ++m) {
      const double p = std::pow(zx, deg - b) * std::pow(zy, b);
      values[2 * m] = {p, 0.0, 0.0, -p};      // E1 mode
      values[2 * m + 1] = {0.0, p, p, 0.0};   // E2 mode
    }
  }
  assert(2 * m == n_cell_dofs_);
}

Mat2 StrainSpace::value(const std::vector<double>& coeffs, int offset, int t,
                        double xi, double eta) const {
  Mat2 vals[12];
  shape_values(t, xi, eta, {vals, 12});
  Mat2 s;
  for (int i = 0; i < n_cell_dofs_; ++i)
    s = s + coeffs[offset + cell_dof(t, i)] * vals[i];
  return s;
}

}  // namespace ddc::fem
