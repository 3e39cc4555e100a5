#include <stdexcept>
#include <utility>

#include "ddc/assembly.hpp"
#include "ddc/quadrature.hpp"

namespace ddc::assembly {

TransportSystem::TransportSystem(const mesh::Mesh& mesh, int k)
    : mesh_(&mesh), k_(k), space_(mesh, k + 1) {
  if (k < 0 || k > 2)
    throw std::invalid_argument("TransportSystem: k in {0,1,2}");
}

int TransportSystem::quadrature_degree(int extra) const {
  const int base = 3 * (k_ + 1);
  return (base < 4 ? 4 : base) + extra;
}

AssembledSystem TransportSystem::assemble(const TransportCoefficients& coef,
                                          const TransportFields& fields,
                                          const TransportOptions& opts) const {
  const mesh::Mesh& m = *mesh_;
  const int nl = space_.dofs_per_cell();
  const quad::TriangleRule& rule =
      quad::triangle_rule(quadrature_degree(opts.extra_quadrature));
  const bool convect = static_cast<bool>(fields.advection);
  const bool lagged = opts.lag_advection;
  if (lagged && convect && !fields.lagged_gradient)
    throw std::invalid_argument(
        "TransportOptions::lag_advection needs fields.lagged_gradient");

  linalg::SystemBuilder builder(size());

  if (opts.constrain_dirichlet && opts.dirichlet_tag) {
    const std::vector<int> bdofs = space_.boundary_dofs(opts.dirichlet_tag);
    for (int d : bdofs) {
      const Vec2 pd = fields.dirichlet
                          ? fields.dirichlet(space_.dof_point(d))
                          : Vec2{0.0, 0.0};
      builder.constrain(offset(0) + d, pd.x);
      builder.constrain(offset(1) + d, pd.y);
    }
  }

  std::vector<double> NV(nl);
  std::vector<Vec2> NG(nl);
  // One local block per component (the components only share quadrature).
  std::vector<double> local(static_cast<size_t>(2) * nl * nl);
  std::vector<double> rhs_local(2 * nl);
  std::vector<int> gdof(2 * nl);

  for (int t = 0; t < m.num_triangles(); ++t) {
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < nl; ++i)
        gdof[c * nl + i] = offset(c) + space_.cell_dof(t, i);
    std::fill(local.begin(), local.end(), 0.0);
    std::fill(rhs_local.begin(), rhs_local.end(), 0.0);
    const double two_area = 2.0 * m.area(t);

    for (int q = 0; q < rule.size; ++q) {
      const quad::TriQuadPoint& qp = rule.points[q];
      const Vec2 x = m.map_to_physical(t, qp.x, qp.y);
      const double w = qp.w * two_area;
      space_.shape_values(qp.x, qp.y, NV);
      space_.shape_gradients(t, qp.x, qp.y, NG);

      const Vec2 adv =
          convect ? fields.advection(t, qp.x, qp.y, x) : Vec2{0.0, 0.0};
      const Vec2 src =
          fields.source ? fields.source(t, qp.x, qp.y, x) : Vec2{0.0, 0.0};
      const Vec2 prev =
          fields.previous ? fields.previous(t, qp.x, qp.y, x) : Vec2{0.0, 0.0};
      Mat2 lg{};
      if (lagged && convect && fields.lagged_gradient)
        lg = fields.lagged_gradient(t, qp.x, qp.y, x);

      for (int c = 0; c < 2; ++c) {
        double* block = &local[static_cast<size_t>(c) * nl * nl];
        const double kc = coef.conductivity[c];
        for (int a = 0; a < nl; ++a) {
          for (int b = 0; b < nl; ++b) {
            double v = kc * dot(NG[b], NG[a]);
            if (coef.inv_dt != 0.0) v += coef.inv_dt * NV[b] * NV[a];
            if (convect && !lagged) v += dot(NG[b], adv) * NV[a];
            block[a * nl + b] += w * v;
          }
          double r = (src[c] + coef.inv_dt * prev[c]) * NV[a];
          if (convect && lagged)
            r -= dot(Vec2{lg(c, 0), lg(c, 1)}, adv) * NV[a];
          rhs_local[c * nl + a] += w * r;
        }
      }
    }

    for (int c = 0; c < 2; ++c) {
      const double* block = &local[static_cast<size_t>(c) * nl * nl];
      for (int a = 0; a < nl; ++a) {
        for (int b = 0; b < nl; ++b)
          builder.add(gdof[c * nl + a], gdof[c * nl + b], block[a * nl + b]);
        builder.add_rhs(gdof[c * nl + a], rhs_local[c * nl + a]);
      }
    }
  }

  // Prescribed flux on the non-essential part of the boundary.
  if (fields.neumann) {
    const quad::LineRule& lrule = quad::line_rule(11);
    for (const BoundaryEdge& be : boundary_edges(m)) {
      if (opts.dirichlet_tag && opts.dirichlet_tag(be.tag)) continue;
      for (int q = 0; q < lrule.size; ++q) {
        const quad::LineQuadPoint& qp = lrule.points[q];
        const Vec2 ref = be.ref_a + qp.t * (be.ref_b - be.ref_a);
        const Vec2 x = m.map_to_physical(be.tri, ref.x, ref.y);
        const Vec2 gn = fields.neumann(x, be.normal);
        const double w = qp.w * be.length;
        space_.shape_values(ref.x, ref.y, NV);
        for (int i = 0; i < nl; ++i) {
          const int cd = space_.cell_dof(be.tri, i);
          builder.add_rhs(offset(0) + cd, w * gn.x * NV[i]);
          builder.add_rhs(offset(1) + cd, w * gn.y * NV[i]);
        }
      }
    }
  }

  AssembledSystem out;
  out.matrix = builder.take_matrix();  // also stamps constrained rhs values
  out.rhs = builder.take_rhs();
  return out;
}

Vec2 TransportSystem::value(const std::vector<double>& x, int t, double xi,
                            double eta) const {
  return Vec2{space_.value(x, offset(0), t, xi, eta),
              space_.value(x, offset(1), t, xi, eta)};
}

Mat2 TransportSystem::gradient(const std::vector<double>& x, int t, double xi,
                               double eta) const {
  const Vec2 g0 = space_.gradient(x, offset(0), t, xi, eta);
  const Vec2 g1 = space_.gradient(x, offset(1), t, xi, eta);
  return Mat2{g0.x, g0.y, g1.x, g1.y};
}

CellField<Vec2> TransportSystem::value_field(std::vector<double> x) const {
  return [this, x = std::move(x)](int t, double xi, double eta, Vec2) {
    return value(x, t, xi, eta);
  };
}

CellField<Mat2> TransportSystem::gradient_field(std::vector<double> x) const {
  return [this, x = std::move(x)](int t, double xi, double eta, Vec2) {
    return gradient(x, t, xi, eta);
  };
}

std::vector<double> TransportSystem::interpolate(
    const std::function<Vec2(Vec2)>& f) const {
  std::vector<double> out(size());
  for (int d = 0; d < space_.size(); ++d) {
    const Vec2 v = f(space_.dof_point(d));
    out[offset(0) + d] = v.x;
    out[offset(1) + d] = v.y;
  }
  return out;
}

}  // namespace ddc::assembly
