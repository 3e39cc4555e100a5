#include <stdexcept>
#include <utility>
#include <vector>

#include "ddc/solver.hpp"

namespace ddc::solver {

TimeMarchResult time_march(const assembly::FlowSystem& flow_sys,
                           const assembly::TransportSystem& transport_sys,
                           const TimeDependentProblem& problem,
                           const SolveOptions& opts_in) {
  if (!(problem.dt > 0.0))
    throw std::invalid_argument("time_march: dt must be positive");
  if (problem.steps < 1)
    throw std::invalid_argument("time_march: steps must be at least 1");

  // Reuse large-system factorizations across all steps (the matrices drift
  // only through the advected state; the stale factor stays an effective
  // preconditioner and is refreshed automatically when it degrades).
  linalg::FactorSlot flow_slot, transport_slot;
  SolveOptions opts = opts_in;
  if (!opts.flow_factor_slot) opts.flow_factor_slot = &flow_slot;
  if (!opts.transport_factor_slot) opts.transport_factor_slot = &transport_slot;

  const double inv_dt = 1.0 / problem.dt;

  // Each step is the steady problem with reaction weight gamma + 1/dt (and
  // the matching second stabilization weight), the previous velocity folded
  // into the flow load, and the previous transported fields entering the
  // transport load through the mass term.
  CoupledProblem step_problem = problem.steady;
  step_problem.flow.gamma = problem.steady.flow.gamma + inv_dt;
  step_problem.flow.kappa2 = 1.0 / step_problem.flow.gamma;
  step_problem.transport.inv_dt = inv_dt;

  // Initial state: nodal velocity data (the strain/pseudostress slots only
  // warm-start the first step) and nodal transported fields.
  CoupledState state;
  state.flow.assign(flow_sys.size(), 0.0);
  if (problem.initial_velocity) {
    const auto& velocity = flow_sys.velocity();
    for (int d = 0; d < velocity.size(); ++d) {
      const Vec2 u0 = problem.initial_velocity(velocity.dof_point(d));
      state.flow[flow_sys.offset_velocity(0) + d] = u0.x;
      state.flow[flow_sys.offset_velocity(1) + d] = u0.y;
    }
  }
  state.transport.assign(transport_sys.size(), 0.0);
  if (problem.initial_transport)
    state.transport = transport_sys.interpolate(problem.initial_transport);

  TimeMarchResult result;
  result.converged = true;
  const assembly::CellField<Vec2> base_source =
      problem.steady.flow_fields.source;

  for (int step = 1; step <= problem.steps; ++step) {
    const assembly::CellField<Vec2> u_old =
        flow_sys.velocity_field(state.flow);
    step_problem.flow_fields.source =
        [base_source, u_old, inv_dt](int t, double xi, double eta, Vec2 x) {
          Vec2 s = inv_dt * u_old(t, xi, eta, x);
          if (base_source) s = s + base_source(t, xi, eta, x);
          return s;
        };
    step_problem.transport_fields.previous =
        transport_sys.value_field(state.transport);

    const FixedPointReport report =
        solve_coupled(flow_sys, transport_sys, step_problem, state, opts);
    result.reports.push_back(report);
    result.converged = result.converged && report.converged;
    if (problem.on_step)
      problem.on_step(step, step * problem.dt, state, report);
  }

  result.state = std::move(state);
  return result;
}

}  // namespace ddc::solver
