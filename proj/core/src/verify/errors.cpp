#include <algorithm>
#include <cmath>

#include "ddc/quadrature.hpp"
#include "ddc/verify.hpp"

namespace ddc::verify {

namespace {

// Squared seminorm pieces accumulated over quadrature points.
struct Accumulator {
  double strain = 0.0;
  double stress = 0.0;
  double div_stress = 0.0;
  double velocity = 0.0;
  double grad_velocity = 0.0;
  double transport = 0.0;
  double grad_transport = 0.0;
  double pressure = 0.0;
};

ErrorNorms finish(const Accumulator& a) {
  ErrorNorms e;
  e.strain = std::sqrt(a.strain);
  e.stress = std::sqrt(a.stress + a.div_stress);
  e.velocity = std::sqrt(a.velocity + a.grad_velocity);
  e.transport = std::sqrt(a.transport + a.grad_transport);
  e.pressure = std::sqrt(a.pressure);
  return e;
}

double frob2(const Mat2& m) { return ddot(m, m); }
double norm2(const Vec2& v) { return dot(v, v); }

quad::TriangleRule error_rule(const assembly::FlowSystem& flow,
                              const assembly::TransportSystem& transport,
                              int extra) {
  const int degree = std::max(flow.quadrature_degree(extra),
                              transport.quadrature_degree(extra));
  return quad::triangle_rule(std::min(degree, quad::max_triangle_degree()));
}

}  // namespace

ErrorNorms errors_against_exact(const assembly::FlowSystem& flow,
                                const assembly::TransportSystem& transport,
                                const solver::CoupledState& state,
                                const mms::ExactSolution& exact,
                                int extra_quadrature) {
  const mesh::Mesh& m = flow.mesh();
  const quad::TriangleRule rule =
      error_rule(flow, transport, extra_quadrature);
  const solver::PressureField pressure =
      solver::recover_pressure(flow, state.flow);

  Accumulator acc;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const double scale = 2.0 * m.area(t);
    for (int q = 0; q < rule.size; ++q) {
      const quad::TriQuadPoint& qp = rule.points[q];
      const double w = qp.w * scale;
      const Vec2 x = m.map_to_physical(t, qp.x, qp.y);

      acc.strain += w * frob2(flow.strain_value(state.flow, t, qp.x, qp.y) -
                              mms::strain(exact, x));
      acc.stress += w * frob2(flow.stress_value(state.flow, t, qp.x, qp.y) -
                              mms::stress(exact, x));
      acc.div_stress +=
          w * norm2(flow.stress_divergence(state.flow, t, qp.x, qp.y) -
                    mms::stress_divergence(exact, x));
      acc.velocity += w * norm2(flow.velocity_value(state.flow, t, qp.x, qp.y) -
                                exact.u(x));
      acc.grad_velocity +=
          w * frob2(flow.velocity_gradient(state.flow, t, qp.x, qp.y) -
                    exact.grad_u(x));
      acc.transport += w * norm2(transport.value(state.transport, t, qp.x,
                                                 qp.y) -
                                 exact.phi(x));
      acc.grad_transport +=
          w * frob2(transport.gradient(state.transport, t, qp.x, qp.y) -
                    exact.grad_phi(x));
      const double dp = pressure.value(t, qp.x, qp.y, x) - exact.p(x);
      acc.pressure += w * dp * dp;
    }
  }
  return finish(acc);
}

ErrorNorms errors_against_fine(const assembly::FlowSystem& flow,
                               const assembly::TransportSystem& transport,
                               const solver::CoupledState& state,
                               const assembly::FlowSystem& fine_flow,
                               const assembly::TransportSystem& fine_transport,
                               const solver::CoupledState& fine_state,
                               const NestedEvaluator& nested,
                               int extra_quadrature) {
  const mesh::Mesh& m = flow.mesh();
  const quad::TriangleRule rule =
      error_rule(flow, transport, extra_quadrature);
  const solver::PressureField pressure =
      solver::recover_pressure(flow, state.flow);
  const solver::PressureField fine_pressure =
      solver::recover_pressure(fine_flow, fine_state.flow);

  Accumulator acc;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const double scale = 2.0 * m.area(t);
    for (int q = 0; q < rule.size; ++q) {
      const quad::TriQuadPoint& qp = rule.points[q];
      const double w = qp.w * scale;
      const Vec2 x = m.map_to_physical(t, qp.x, qp.y);
      const NestedEvaluator::Location f = nested.locate(t, qp.x, qp.y);

      acc.strain +=
          w * frob2(flow.strain_value(state.flow, t, qp.x, qp.y) -
                    fine_flow.strain_value(fine_state.flow, f.tri, f.xi, f.eta));
      acc.stress +=
          w * frob2(flow.stress_value(state.flow, t, qp.x, qp.y) -
                    fine_flow.stress_value(fine_state.flow, f.tri, f.xi, f.eta));
      acc.div_stress +=
          w * norm2(flow.stress_divergence(state.flow, t, qp.x, qp.y) -
                    fine_flow.stress_divergence(fine_state.flow, f.tri, f.xi,
                                                f.eta));
      acc.velocity +=
          w * norm2(flow.velocity_value(state.flow, t, qp.x, qp.y) -
                    fine_flow.velocity_value(fine_state.flow, f.tri, f.xi,
                                             f.eta));
      acc.grad_velocity +=
          w * frob2(flow.velocity_gradient(state.flow, t, qp.x, qp.y) -
                    fine_flow.velocity_gradient(fine_state.flow, f.tri, f.xi,
                                                f.eta));
      acc.transport +=
          w * norm2(transport.value(state.transport, t, qp.x, qp.y) -
                    fine_transport.value(fine_state.transport, f.tri, f.xi,
                                         f.eta));
      acc.grad_transport +=
          w * frob2(transport.gradient(state.transport, t, qp.x, qp.y) -
                    fine_transport.gradient(fine_state.transport, f.tri, f.xi,
                                            f.eta));
      const double dp = pressure.value(t, qp.x, qp.y, x) -
                        fine_pressure.value(f.tri, f.xi, f.eta, x);
      acc.pressure += w * dp * dp;
    }
  }
  return finish(acc);
}

double eoc(double error_coarse, double error_fine, double h_coarse,
           double h_fine) {
  if (error_coarse <= 0.0 || error_fine <= 0.0 || h_coarse <= 0.0 ||
      h_fine <= 0.0 || h_coarse == h_fine) {
    throw std::invalid_argument(
        "eoc needs positive errors and two distinct mesh sizes");
  }
  return std::log(error_coarse / error_fine) / std::log(h_coarse / h_fine);
}

namespace {

// Rate of one column, 0 when a level has degenerate inputs (for instance
// an exactly reproduced solution).
double column_rate(double e_coarse, double e_fine, double h_coarse,
                   double h_fine) {
  if (e_coarse <= 0.0 || e_fine <= 0.0 || h_coarse <= 0.0 || h_fine <= 0.0 ||
      h_coarse == h_fine) {
    return 0.0;
  }
  return eoc(e_coarse, e_fine, h_coarse, h_fine);
}

}  // namespace

void fill_rates(std::vector<StudyRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == 0) {
      rows[i].rates = ErrorNorms{};
      continue;
    }
    const StudyRow& prev = rows[i - 1];
    StudyRow& cur = rows[i];
    cur.rates.strain =
        column_rate(prev.errors.strain, cur.errors.strain, prev.h, cur.h);
    cur.rates.stress =
        column_rate(prev.errors.stress, cur.errors.stress, prev.h, cur.h);
    cur.rates.velocity =
        column_rate(prev.errors.velocity, cur.errors.velocity, prev.h, cur.h);
    cur.rates.transport = column_rate(prev.errors.transport,
                                      cur.errors.transport, prev.h, cur.h);
    cur.rates.pressure =
        column_rate(prev.errors.pressure, cur.errors.pressure, prev.h, cur.h);
  }
}

}  // namespace ddc::verify
