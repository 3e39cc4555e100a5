#include "ddc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include "ddc/quadrature.hpp"

namespace ddc::solver {

namespace {

double norm_sq(const std::vector<double>& v) {
  double s = 0.0;
  for (double a : v) s += a * a;
  return s;
}

// || new - old || / || new || over the stacked coefficient vectors.
double relative_increment(const std::vector<double>& fnew,
                          const std::vector<double>& fold,
                          const std::vector<double>& tnew,
                          const std::vector<double>& told) {
  double diff = 0.0, size = norm_sq(fnew) + norm_sq(tnew);
  for (std::size_t i = 0; i < fnew.size(); ++i) {
    const double d = fnew[i] - fold[i];
    diff += d * d;
  }
  for (std::size_t i = 0; i < tnew.size(); ++i) {
    const double d = tnew[i] - told[i];
    diff += d * d;
  }
  return std::sqrt(diff) / std::max(std::sqrt(size), 1e-300);
}

// Solve one assembled block, warm-starting from x; throws SolverError when
// the linear solver cannot reach its tolerance.
void solve_block(const assembly::AssembledSystem& system,
                 std::vector<double>& x, linalg::SolverOptions linear,
                 bool symmetric, const char* what) {
  linear.symmetric_positive = symmetric;
  x.resize(system.rhs.size(), 0.0);
  const linalg::SolveReport report =
      linalg::solve(system.matrix, system.rhs, x, linear);
  if (!report.converged)
    throw SolverError(std::string(what) + " linear solve stalled (" +
                      report.method + ", relative residual " +
                      std::to_string(report.residual) + ")");
}

assembly::TransportOptions transport_options(const CoupledProblem& problem,
                                             const SolveOptions& opts) {
  assembly::TransportOptions o = problem.transport_opts;
  o.extra_quadrature = std::max(o.extra_quadrature, opts.extra_quadrature);
  return o;
}

}  // namespace

int solve_flow(const assembly::FlowSystem& sys, const CoupledProblem& problem,
               const assembly::CellField<Vec2>& phi, std::vector<double>& x,
               const SolveOptions& opts) {
  x.resize(sys.size(), 0.0);
  assembly::FlowFields fields = problem.flow_fields;
  fields.phi = phi;

  assembly::FlowOptions fopts;
  fopts.linearization = opts.linearization;
  fopts.extra_quadrature = opts.extra_quadrature;

  // Reuse one factorization across the inner linearized solves (and, when
  // the caller provides a slot, across calls).
  linalg::FactorSlot scratch_slot;
  linalg::SolverOptions linear = opts.linear;
  if (!linear.factor_slot)
    linear.factor_slot =
        opts.flow_factor_slot ? opts.flow_factor_slot : &scratch_slot;

  int iterations = 0;
  std::vector<double> next = x;
  const std::vector<double> no_transport;
  while (iterations < opts.max_inner) {
    fields.advection = sys.velocity_field(x);
    const assembly::AssembledSystem system =
        sys.assemble(problem.flow, fields, fopts);
    solve_block(system, next, linear, /*symmetric=*/false, "flow");
    ++iterations;
    const double inc = relative_increment(next, x, no_transport, no_transport);
    x = next;
    if (inc <= opts.inner_tol) break;
  }
  return iterations;
}

void solve_transport(const assembly::TransportSystem& sys,
                     const CoupledProblem& problem,
                     const assembly::CellField<Vec2>& advection,
                     const assembly::CellField<Mat2>& lagged_gradient,
                     std::vector<double>& x, const SolveOptions& opts) {
  const assembly::TransportOptions o = transport_options(problem, opts);
  assembly::TransportFields fields = problem.transport_fields;
  fields.advection = advection;
  if (o.lag_advection) fields.lagged_gradient = lagged_gradient;
  const assembly::AssembledSystem system =
      sys.assemble(problem.transport, fields, o);
  linalg::SolverOptions linear = opts.linear;
  if (!linear.factor_slot) linear.factor_slot = opts.transport_factor_slot;
  // With the advection lagged to the load the matrix is symmetric positive
  // definite (diffusion plus mass); in matrix mode it is not.
  solve_block(system, x, linear, /*symmetric=*/o.lag_advection, "transport");
}

CoupledState initial_guess(const assembly::FlowSystem& flow_sys,
                           const assembly::TransportSystem& transport_sys,
                           const CoupledProblem& problem,
                           const SolveOptions& opts) {
  CoupledState state;

  // Transport without advection (pure diffusion with the full boundary and
  // load data).
  state.transport.assign(transport_sys.size(), 0.0);
  solve_transport(transport_sys, problem, {}, {}, state.transport, opts);

  // Flow without the convective form, with buoyancy from that startup field.
  state.flow.assign(flow_sys.size(), 0.0);
  assembly::FlowFields fields = problem.flow_fields;
  fields.phi = transport_sys.value_field(state.transport);
  fields.advection = {};
  assembly::FlowOptions fopts;
  fopts.extra_quadrature = opts.extra_quadrature;
  const assembly::AssembledSystem system =
      flow_sys.assemble(problem.flow, fields, fopts);
  linalg::SolverOptions linear = opts.linear;
  if (!linear.factor_slot) linear.factor_slot = opts.flow_factor_slot;
  solve_block(system, state.flow, linear, /*symmetric=*/false, "flow");
  return state;
}

FixedPointReport solve_coupled(const assembly::FlowSystem& flow_sys,
                               const assembly::TransportSystem& transport_sys,
                               const CoupledProblem& problem,
                               CoupledState& state, const SolveOptions& opts_in) {
  state.flow.resize(flow_sys.size(), 0.0);
  state.transport.resize(transport_sys.size(), 0.0);

  // Reuse large-system factorizations across the sweeps.
  linalg::FactorSlot flow_slot, transport_slot;
  SolveOptions opts = opts_in;
  if (!opts.flow_factor_slot) opts.flow_factor_slot = &flow_slot;
  if (!opts.transport_factor_slot) opts.transport_factor_slot = &transport_slot;

  FixedPointReport report;
  while (report.outer_iterations < opts.max_outer) {
    const std::vector<double> old_flow = state.flow;
    const std::vector<double> old_transport = state.transport;

    // Flow at the current transported fields, then transport advected by the
    // new velocity.  The lagged variant reads the transported-gradient of
    // the previous sweep; the matrix variant ignores that argument.
    report.flow_iterations +=
        solve_flow(flow_sys, problem,
                   transport_sys.value_field(state.transport), state.flow,
                   opts);
    solve_transport(transport_sys, problem,
                    flow_sys.velocity_field(state.flow),
                    transport_sys.gradient_field(old_transport),
                    state.transport, opts);

    ++report.outer_iterations;
    report.last_increment = relative_increment(state.flow, old_flow,
                                               state.transport, old_transport);
    if (report.last_increment <= opts.outer_tol) {
      report.converged = true;
      break;
    }
  }

  // Certificate: algebraic residuals of both blocks re-assembled at the
  // returned state.  The one-sided convective form evaluated at the returned
  // velocity reproduces the nonlinear momentum flux exactly, and matrix-side
  // advection reproduces the transport coupling, so these are residuals of
  // the coupled nonlinear system itself.
  {
    assembly::FlowFields fields = problem.flow_fields;
    fields.phi = transport_sys.value_field(state.transport);
    fields.advection = flow_sys.velocity_field(state.flow);
    assembly::FlowOptions fopts;
    fopts.linearization = assembly::Linearization::kPicard;
    fopts.extra_quadrature = opts.extra_quadrature;
    const assembly::AssembledSystem system =
        flow_sys.assemble(problem.flow, fields, fopts);
    report.flow_residual =
        linalg::relative_residual(system.matrix, state.flow, system.rhs);

    assembly::TransportOptions to = transport_options(problem, opts);
    to.lag_advection = false;
    assembly::TransportFields tfields = problem.transport_fields;
    tfields.advection = fields.advection;
    const assembly::AssembledSystem tsystem =
        transport_sys.assemble(problem.transport, tfields, to);
    report.transport_residual = linalg::relative_residual(
        tsystem.matrix, state.transport, tsystem.rhs);
  }
  return report;
}

PressureField recover_pressure(const assembly::FlowSystem& sys,
                               std::vector<double> x) {
  const auto& m = sys.mesh();
  const quad::TriangleRule rule =
      quad::triangle_rule(sys.quadrature_degree());

  double l2_sq = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const double two_area = 2.0 * m.area(t);
    for (int q = 0; q < rule.size; ++q) {
      const auto& qp = rule.points[q];
      const Vec2 u = sys.velocity_value(x, t, qp.x, qp.y);
      l2_sq += qp.w * two_area * dot(u, u);
    }
  }

  PressureField field;
  field.correction = l2_sq / (2.0 * m.total_area());

  auto coeffs = std::make_shared<const std::vector<double>>(std::move(x));
  const assembly::FlowSystem* sys_ptr = &sys;
  const double correction = field.correction;
  field.value = [sys_ptr, coeffs, correction](int t, double xi, double eta,
                                              Vec2) {
    const Mat2 sigma = sys_ptr->stress_value(*coeffs, t, xi, eta);
    const Vec2 u = sys_ptr->velocity_value(*coeffs, t, xi, eta);
    return -0.5 * (trace(sigma) + dot(u, u)) + correction;
  };

  for (int t = 0; t < m.num_triangles(); ++t) {
    const double two_area = 2.0 * m.area(t);
    for (int q = 0; q < rule.size; ++q) {
      const auto& qp = rule.points[q];
      field.mean += qp.w * two_area *
                    field.value(t, qp.x, qp.y, m.map_to_physical(t, qp.x, qp.y));
    }
  }
  return field;
}

}  // namespace ddc::solver
