#include <stdexcept>
#include <utility>

#include "ddc/assembly.hpp"
#include "ddc/quadrature.hpp"

namespace ddc::assembly {

std::vector<BoundaryEdge> boundary_edges(const mesh::Mesh& mesh) {
  std::vector<BoundaryEdge> out;
  const Vec2 ref[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int lv = 0; lv < 3; ++lv) {
      const int e = mesh.triangle_edge(t, lv);
      if (!mesh.edge_on_boundary(e)) continue;
      BoundaryEdge be;
      be.tri = t;
      be.edge = e;
      be.tag = mesh.edge_tag(e);
      const int la = (lv + 1) % 3;
      const int lb = (lv + 2) % 3;
      const auto ev = mesh.edge_vertices(e);
      if (mesh.triangle(t).v[la] == ev[0]) {
        be.ref_a = ref[la];
        be.ref_b = ref[lb];
      } else {
        be.ref_a = ref[lb];
        be.ref_b = ref[la];
      }
      be.normal = mesh.outward_normal(t, lv);
      be.length = mesh.edge_length(e);
      out.push_back(be);
    }
  }
  return out;
}

FlowSystem::FlowSystem(const mesh::Mesh& mesh, int k)
    : mesh_(&mesh),
      k_(k),
      strain_(mesh, k),
      stress_(mesh, k),
      velocity_(mesh, k + 1) {
  if (k < 0 || k > 2) throw std::invalid_argument("FlowSystem: k in {0,1,2}");
}

int FlowSystem::quadrature_degree(int extra) const {
  // Covers every bilinear term exactly (the cubic-in-velocity convective
  // term needs 3(k+1)); variable coefficients and sources are smooth, so the
  // same rule keeps their quadrature error beyond the discretization order.
  const int base = 3 * (k_ + 1);
  return (base < 4 ? 4 : base) + extra;
}

AssembledSystem FlowSystem::assemble(const FlowCoefficients& coef,
                                     const FlowFields& fields,
                                     const FlowOptions& opts) const {
  if (!coef.nu) throw std::invalid_argument("FlowCoefficients::nu is not set");
  const mesh::Mesh& m = *mesh_;
  const int ns = strain_.dofs_per_cell();
  const int nr = stress_.dofs_per_cell();
  const int nl = velocity_.dofs_per_cell();
  const int off_s = ns;          // local offset of the stress rows
  const int off_u = ns + 2 * nr; // local offset of the velocity components
  const int L = ns + 2 * nr + 2 * nl;
  const int lam = multiplier_index();
  const bool convect = static_cast<bool>(fields.advection);
  const bool newton =
      convect && opts.linearization == Linearization::kNewton;

  const quad::TriangleRule& rule =
      quad::triangle_rule(quadrature_degree(opts.extra_quadrature));

  linalg::SystemBuilder builder(size());

  if (opts.constrain_velocity) {
    const std::vector<int> bdofs =
        velocity_.boundary_dofs([](int) { return true; });
    for (int d : bdofs) {
      const Vec2 ud =
          fields.dirichlet ? fields.dirichlet(velocity_.dof_point(d))
                           : Vec2{0.0, 0.0};
      builder.constrain(offset_velocity(0) + d, ud.x);
      builder.constrain(offset_velocity(1) + d, ud.y);
    }
  }

  // Per-quadrature-point shape data.
  std::vector<Mat2> S(ns);
  std::vector<Vec2> R(nr);
  std::vector<double> D(nr);
  std::vector<double> NV(nl);
  std::vector<Vec2> NG(nl);
  // Row-expanded stress and component-expanded velocity bases.
  std::vector<Mat2> sig_ten(2 * nr), sig_dev(2 * nr);
  std::vector<Vec2> sig_div(2 * nr);
  std::vector<Vec2> vel_vec(2 * nl);
  std::vector<Mat2> vel_sym(2 * nl), vel_skw(2 * nl);
  std::vector<Mat2> conv(2 * nl);  // (u_b x w)^d pairing of the convection

  std::vector<double> local(static_cast<size_t>(L) * L);
  std::vector<double> rhs_local(L);
  std::vector<double> tr_col(2 * nr);
  std::vector<int> gdof(L);

  for (int t = 0; t < m.num_triangles(); ++t) {
    for (int i = 0; i < ns; ++i)
      gdof[i] = offset_strain() + strain_.cell_dof(t, i);
    for (int r = 0; r < 2; ++r)
      for (int i = 0; i < nr; ++i)
        gdof[off_s + r * nr + i] = offset_stress(r) + stress_.cell_dof(t, i);
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < nl; ++i)
        gdof[off_u + c * nl + i] =
            offset_velocity(c) + velocity_.cell_dof(t, i);

    std::fill(local.begin(), local.end(), 0.0);
    std::fill(rhs_local.begin(), rhs_local.end(), 0.0);
    std::fill(tr_col.begin(), tr_col.end(), 0.0);
    const double two_area = 2.0 * m.area(t);

    for (int q = 0; q < rule.size; ++q) {
      const quad::TriQuadPoint& qp = rule.points[q];
      const double xi = qp.x, eta = qp.y;
      const Vec2 x = m.map_to_physical(t, xi, eta);
      const double w = qp.w * two_area;

      strain_.shape_values(t, xi, eta, S);
      stress_.shape_values(t, xi, eta, R);
      stress_.shape_divergences(t, xi, eta, D);
      velocity_.shape_values(xi, eta, NV);
      velocity_.shape_gradients(t, xi, eta, NG);

      for (int i = 0; i < nr; ++i) {
        sig_ten[i] = Mat2{R[i].x, R[i].y, 0.0, 0.0};
        sig_ten[nr + i] = Mat2{0.0, 0.0, R[i].x, R[i].y};
        sig_div[i] = Vec2{D[i], 0.0};
        sig_div[nr + i] = Vec2{0.0, D[i]};
      }
      for (int i = 0; i < 2 * nr; ++i) sig_dev[i] = dev(sig_ten[i]);
      for (int i = 0; i < nl; ++i) {
        vel_vec[i] = Vec2{NV[i], 0.0};
        vel_vec[nl + i] = Vec2{0.0, NV[i]};
        const Mat2 gx{NG[i].x, NG[i].y, 0.0, 0.0};
        const Mat2 gy{0.0, 0.0, NG[i].x, NG[i].y};
        vel_sym[i] = sym(gx);
        vel_sym[nl + i] = sym(gy);
        vel_skw[i] = skew(gx);
        vel_skw[nl + i] = skew(gy);
      }

      const Vec2 phi =
          fields.phi ? fields.phi(t, xi, eta, x) : Vec2{0.0, 0.0};
      const double nu = coef.nu(x, phi);
      Vec2 force = dot(coef.alpha, phi) * coef.gravity;
      if (fields.source) force = force + fields.source(t, xi, eta, x);

      Vec2 adv{0.0, 0.0};
      Mat2 ww_dev{};
      if (convect) {
        adv = fields.advection(t, xi, eta, x);
        for (int i = 0; i < 2 * nl; ++i) {
          Mat2 c = outer(vel_vec[i], adv);
          if (newton) c = c + outer(adv, vel_vec[i]);
          conv[i] = c;
        }
        if (newton) ww_dev = dev(outer(adv, adv));
      }

      // --- test: strain (r) ------------------------------------------------
      for (int a = 0; a < ns; ++a) {
        const Mat2& ra = S[a];
        double* row = &local[static_cast<size_t>(a) * L];
        for (int b = 0; b < ns; ++b)
          row[b] += w * 2.0 * nu * ddot(S[b], ra);
        // sigma^d : r drops its deviatoric projection against traceless r.
        for (int b = 0; b < 2 * nr; ++b)
          row[off_s + b] -= w * ddot(sig_ten[b], ra);
        if (convect)
          for (int b = 0; b < 2 * nl; ++b)
            row[off_u + b] -= w * ddot(conv[b], ra);
        if (newton) rhs_local[a] -= w * ddot(ww_dev, ra);
      }

      // --- test: stress rows (tau) -----------------------------------------
      for (int a = 0; a < 2 * nr; ++a) {
        const Mat2& ta = sig_ten[a];
        const Mat2& tda = sig_dev[a];
        const Vec2& dta = sig_div[a];
        double* row = &local[static_cast<size_t>(off_s + a) * L];
        for (int b = 0; b < ns; ++b)
          row[b] += w * (1.0 - 2.0 * coef.kappa3 * nu) * ddot(S[b], ta);
        for (int b = 0; b < 2 * nr; ++b)
          row[off_s + b] += w * (coef.kappa3 * ddot(sig_dev[b], tda) +
                                 coef.kappa2 * dot(sig_div[b], dta));
        for (int b = 0; b < 2 * nl; ++b) {
          double v = (1.0 - coef.kappa2 * coef.gamma) * dot(vel_vec[b], dta) +
                     ddot(vel_skw[b], ta);
          if (convect) v += coef.kappa3 * ddot(conv[b], tda);
          row[off_u + b] += w * v;
        }
        rhs_local[off_s + a] -= w * coef.kappa2 * dot(force, dta);
        if (newton)
          rhs_local[off_s + a] += w * coef.kappa3 * ddot(ww_dev, tda);
      }

      // --- test: velocity (v) ----------------------------------------------
      for (int a = 0; a < 2 * nl; ++a) {
        const Vec2& va = vel_vec[a];
        const Mat2& ea = vel_sym[a];
        const Mat2& wa = vel_skw[a];
        double* row = &local[static_cast<size_t>(off_u + a) * L];
        for (int b = 0; b < ns; ++b)
          row[b] -= w * coef.kappa1 * ddot(S[b], ea);
        for (int b = 0; b < 2 * nr; ++b)
          row[off_s + b] -=
              w * (dot(va, sig_div[b]) + ddot(sig_ten[b], wa));
        for (int b = 0; b < 2 * nl; ++b)
          row[off_u + b] += w * (coef.gamma * dot(vel_vec[b], va) +
                                 coef.kappa1 * ddot(vel_sym[b], ea));
        rhs_local[off_u + a] += w * dot(force, va);
      }

      if (opts.with_multiplier)
        for (int b = 0; b < 2 * nr; ++b) tr_col[b] += w * trace(sig_ten[b]);
    }

    for (int a = 0; a < L; ++a) {
      const double* row = &local[static_cast<size_t>(a) * L];
      for (int b = 0; b < L; ++b) builder.add(gdof[a], gdof[b], row[b]);
      builder.add_rhs(gdof[a], rhs_local[a]);
    }
    if (opts.with_multiplier) {
      for (int b = 0; b < 2 * nr; ++b) {
        builder.add(lam, gdof[off_s + b], tr_col[b]);
        builder.add(gdof[off_s + b], lam, tr_col[b]);
      }
    }
  }

  if (opts.with_multiplier) builder.add(lam, lam, 0.0);

  // Nonzero boundary velocity enters the tau rows through <tau n, u_D>.
  if (fields.dirichlet) {
    const quad::LineRule& lrule = quad::line_rule(11);
    for (const BoundaryEdge& be : boundary_edges(m)) {
      for (int q = 0; q < lrule.size; ++q) {
        const quad::LineQuadPoint& qp = lrule.points[q];
        const Vec2 ref = be.ref_a + qp.t * (be.ref_b - be.ref_a);
        const Vec2 x = m.map_to_physical(be.tri, ref.x, ref.y);
        const Vec2 ud = fields.dirichlet(x);
        const double w = qp.w * be.length;
        stress_.shape_values(be.tri, ref.x, ref.y, R);
        for (int i = 0; i < nr; ++i) {
          const double rn = w * dot(R[i], be.normal);
          const int cd = stress_.cell_dof(be.tri, i);
          builder.add_rhs(offset_stress(0) + cd, rn * ud.x);
          builder.add_rhs(offset_stress(1) + cd, rn * ud.y);
        }
      }
    }
  }

  AssembledSystem out;
  out.matrix = builder.take_matrix();  // also stamps constrained rhs values
  out.rhs = builder.take_rhs();
  return out;
}

Mat2 FlowSystem::strain_value(const std::vector<double>& x, int t, double xi,
                              double eta) const {
  return strain_.value(x, offset_strain(), t, xi, eta);
}

Mat2 FlowSystem::stress_value(const std::vector<double>& x, int t, double xi,
                              double eta) const {
  const Vec2 r0 = stress_.value(x, offset_stress(0), t, xi, eta);
  const Vec2 r1 = stress_.value(x, offset_stress(1), t, xi, eta);
  return Mat2{r0.x, r0.y, r1.x, r1.y};
}

Vec2 FlowSystem::stress_divergence(const std::vector<double>& x, int t,
                                   double xi, double eta) const {
  return Vec2{stress_.divergence(x, offset_stress(0), t, xi, eta),
              stress_.divergence(x, offset_stress(1), t, xi, eta)};
}

Vec2 FlowSystem::velocity_value(const std::vector<double>& x, int t, double xi,
                                double eta) const {
  return Vec2{velocity_.value(x, offset_velocity(0), t, xi, eta),
              velocity_.value(x, offset_velocity(1), t, xi, eta)};
}

Mat2 FlowSystem::velocity_gradient(const std::vector<double>& x, int t,
                                   double xi, double eta) const {
  const Vec2 gx = velocity_.gradient(x, offset_velocity(0), t, xi, eta);
  const Vec2 gy = velocity_.gradient(x, offset_velocity(1), t, xi, eta);
  return Mat2{gx.x, gx.y, gy.x, gy.y};
}

CellField<Vec2> FlowSystem::velocity_field(std::vector<double> x) const {
  return [this, x = std::move(x)](int t, double xi, double eta, Vec2) {
    return velocity_value(x, t, xi, eta);
  };
}

}  // namespace ddc::assembly
