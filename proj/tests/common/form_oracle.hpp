#pragma once

// Independent brute-force evaluation of the flow and transport
// bilinear/linear forms on global coefficient vectors.  Every term is
// written exactly as in its mathematical definition, and all fields are
// evaluated through the whole-solution evaluation helpers, so this shares no
// logic with the per-element local-matrix assembly it is used to verify.
// Dense matrices are recovered entry by entry via unit coefficient vectors.

#include <functional>
#include <vector>

#include "ddc/assembly.hpp"
#include "ddc/quadrature.hpp"
#include "ddc/types.hpp"

namespace oracle {

using ddc::Mat2;
using ddc::Vec2;
namespace asm2 = ddc::assembly;

// x^T A y for the augmented flow form (including the convective part when
// fields.advection is set, two-sided if `newton`, and the mean-trace
// multiplier bordering): A(x-as-trial, y-as-test).
inline double flow_form(const asm2::FlowSystem& sys,
                        const asm2::FlowCoefficients& coef,
                        const asm2::FlowFields& fields, bool newton,
                        const std::vector<double>& x,
                        const std::vector<double>& y) {
  const auto& m = sys.mesh();
  const auto rule = ddc::quad::triangle_rule(sys.quadrature_degree());
  double sum = 0.0, tr_x = 0.0, tr_y = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const double two_area = 2.0 * m.area(t);
    for (int q = 0; q < rule.size; ++q) {
      const auto& qp = rule.points[q];
      const double w = qp.w * two_area;
      const Vec2 p = m.map_to_physical(t, qp.x, qp.y);

      const Mat2 tt = sys.strain_value(x, t, qp.x, qp.y);
      const Mat2 sg = sys.stress_value(x, t, qp.x, qp.y);
      const Vec2 dsg = sys.stress_divergence(x, t, qp.x, qp.y);
      const Vec2 u = sys.velocity_value(x, t, qp.x, qp.y);
      const Mat2 gu = sys.velocity_gradient(x, t, qp.x, qp.y);

      const Mat2 rr = sys.strain_value(y, t, qp.x, qp.y);
      const Mat2 ta = sys.stress_value(y, t, qp.x, qp.y);
      const Vec2 dta = sys.stress_divergence(y, t, qp.x, qp.y);
      const Vec2 v = sys.velocity_value(y, t, qp.x, qp.y);
      const Mat2 gv = sys.velocity_gradient(y, t, qp.x, qp.y);

      const Vec2 phi =
          fields.phi ? fields.phi(t, qp.x, qp.y, p) : Vec2{0.0, 0.0};
      const double nu = coef.nu(p, phi);

      double val =
          2.0 * nu * ddot(tt, rr - coef.kappa3 * dev(ta)) +
          ddot(tt, dev(ta) - coef.kappa1 * sym(gv)) -
          ddot(dev(sg), rr - coef.kappa3 * dev(ta)) +
          (1.0 - coef.kappa2 * coef.gamma) * dot(u, dta) - dot(v, dsg) +
          ddot(skew(gu), ta) - ddot(sg, skew(gv)) + coef.gamma * dot(u, v) +
          coef.kappa2 * dot(dsg, dta) + coef.kappa1 * ddot(sym(gu), sym(gv));
      if (fields.advection) {
        const Vec2 wv = fields.advection(t, qp.x, qp.y, p);
        Mat2 conv = outer(u, wv);
        if (newton) conv = conv + outer(wv, u);
        val += ddot(dev(conv), coef.kappa3 * dev(ta) - rr);
      }
      sum += w * val;
      tr_x += w * trace(sg);
      tr_y += w * trace(ta);
    }
  }
  const int lam = sys.multiplier_index();
  sum += x[lam] * tr_y + y[lam] * tr_x;
  return sum;
}

// The flow right-hand side functional evaluated at test vector y: buoyancy
// and volume source against {v - kappa2 div tau}, the quadratic Newton
// correction, and the boundary velocity term against tau n.
inline double flow_rhs(const asm2::FlowSystem& sys,
                       const asm2::FlowCoefficients& coef,
                       const asm2::FlowFields& fields, bool newton,
                       const std::vector<double>& y) {
  const auto& m = sys.mesh();
  const auto rule = ddc::quad::triangle_rule(sys.quadrature_degree());
  double sum = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const double two_area = 2.0 * m.area(t);
    for (int q = 0; q < rule.size; ++q) {
      const auto& qp = rule.points[q];
      const double w = qp.w * two_area;
      const Vec2 p = m.map_to_physical(t, qp.x, qp.y);

      const Mat2 rr = sys.strain_value(y, t, qp.x, qp.y);
      const Mat2 ta = sys.stress_value(y, t, qp.x, qp.y);
      const Vec2 dta = sys.stress_divergence(y, t, qp.x, qp.y);
      const Vec2 v = sys.velocity_value(y, t, qp.x, qp.y);

      const Vec2 phi =
          fields.phi ? fields.phi(t, qp.x, qp.y, p) : Vec2{0.0, 0.0};
      Vec2 force = dot(coef.alpha, phi) * coef.gravity;
      if (fields.source) force = force + fields.source(t, qp.x, qp.y, p);

      double val = dot(force, v - coef.kappa2 * dta);
      if (newton && fields.advection) {
        const Vec2 wv = fields.advection(t, qp.x, qp.y, p);
        val += ddot(dev(outer(wv, wv)), coef.kappa3 * dev(ta) - rr);
      }
      sum += w * val;
    }
  }
  if (fields.dirichlet) {
    const auto lrule = ddc::quad::line_rule(11);
    for (const auto& be : asm2::boundary_edges(m)) {
      for (int q = 0; q < lrule.size; ++q) {
        const auto& qp = lrule.points[q];
        const Vec2 ref = be.ref_a + qp.t * (be.ref_b - be.ref_a);
        const Vec2 p = m.map_to_physical(be.tri, ref.x, ref.y);
        const Mat2 ta = sys.stress_value(y, be.tri, ref.x, ref.y);
        sum += qp.w * be.length * dot(ta * be.normal, fields.dirichlet(p));
      }
    }
  }
  return sum;
}

// x^T C y for the transport block (diffusion + optional mass + optional
// matrix-side advection).
inline double transport_form(const asm2::TransportSystem& sys,
                             const asm2::TransportCoefficients& coef,
                             const asm2::TransportFields& fields, bool lagged,
                             const std::vector<double>& x,
                             const std::vector<double>& y) {
  const auto& m = sys.mesh();
  const auto rule = ddc::quad::triangle_rule(sys.quadrature_degree());
  double sum = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const double two_area = 2.0 * m.area(t);
    for (int q = 0; q < rule.size; ++q) {
      const auto& qp = rule.points[q];
      const double w = qp.w * two_area;
      const Vec2 p = m.map_to_physical(t, qp.x, qp.y);
      const Vec2 cx = sys.value(x, t, qp.x, qp.y);
      const Mat2 gx = sys.gradient(x, t, qp.x, qp.y);
      const Vec2 cy = sys.value(y, t, qp.x, qp.y);
      const Mat2 gy = sys.gradient(y, t, qp.x, qp.y);

      double val = 0.0;
      for (int c = 0; c < 2; ++c) {
        const Vec2 gxc{gx(c, 0), gx(c, 1)};
        const Vec2 gyc{gy(c, 0), gy(c, 1)};
        val += coef.conductivity[c] * dot(gxc, gyc);
        val += coef.inv_dt * cx[c] * cy[c];
        if (fields.advection && !lagged)
          val += dot(gxc, fields.advection(t, qp.x, qp.y, p)) * cy[c];
      }
      sum += w * val;
    }
  }
  return sum;
}

// Transport right-hand side functional at test vector y.
inline double transport_rhs(const asm2::TransportSystem& sys,
                            const asm2::TransportCoefficients& coef,
                            const asm2::TransportFields& fields, bool lagged,
                            const std::function<bool(int)>& dirichlet_tag,
                            const std::vector<double>& y) {
  const auto& m = sys.mesh();
  const auto rule = ddc::quad::triangle_rule(sys.quadrature_degree());
  double sum = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const double two_area = 2.0 * m.area(t);
    for (int q = 0; q < rule.size; ++q) {
      const auto& qp = rule.points[q];
      const double w = qp.w * two_area;
      const Vec2 p = m.map_to_physical(t, qp.x, qp.y);
      const Vec2 cy = sys.value(y, t, qp.x, qp.y);
      Vec2 load{0.0, 0.0};
      if (fields.source) load = load + fields.source(t, qp.x, qp.y, p);
      if (fields.previous)
        load = load + coef.inv_dt * fields.previous(t, qp.x, qp.y, p);
      double val = dot(load, cy);
      if (lagged && fields.advection && fields.lagged_gradient) {
        const Mat2 lg = fields.lagged_gradient(t, qp.x, qp.y, p);
        const Vec2 wv = fields.advection(t, qp.x, qp.y, p);
        val -= dot(Vec2{dot(Vec2{lg(0, 0), lg(0, 1)}, wv),
                        dot(Vec2{lg(1, 0), lg(1, 1)}, wv)},
                   cy);
      }
      sum += w * val;
    }
  }
  if (fields.neumann) {
    const auto lrule = ddc::quad::line_rule(11);
    for (const auto& be : asm2::boundary_edges(m)) {
      if (dirichlet_tag && dirichlet_tag(be.tag)) continue;
      for (int q = 0; q < lrule.size; ++q) {
        const auto& qp = lrule.points[q];
        const Vec2 ref = be.ref_a + qp.t * (be.ref_b - be.ref_a);
        const Vec2 p = m.map_to_physical(be.tri, ref.x, ref.y);
        const Vec2 cy = sys.value(y, be.tri, ref.x, ref.y);
        sum += qp.w * be.length * dot(fields.neumann(p, be.normal), cy);
      }
    }
  }
  return sum;
}

// Look up entry (i, j) of a CSR matrix (0 when not stored).
inline double csr_entry(const ddc::linalg::CsrMatrix& a, int i, int j) {
  for (int k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
    if (a.col_idx()[k] == j) return a.values()[k];
  return 0.0;
}

}  // namespace oracle
