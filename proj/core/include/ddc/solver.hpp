#pragma once

// Nonlinear drivers on top of the assemblers:
//
//  * solve_flow      - inner iteration for the flow block at frozen
//                      transported fields (one-sided or two-sided
//                      linearization of the convective term),
//  * solve_coupled   - the alternating flow/transport fixed point,
//  * initial_guess   - linear startup state (diffusion-only transport, then
//                      convection-free flow),
//  * recover_pressure- postprocessed pressure from the pseudostress,
//  * time_march      - backward Euler, rewriting each step as a steady
//                      problem with reaction weight gamma + 1/dt.

#include <functional>
#include <stdexcept>
#include <vector>

#include "ddc/assembly.hpp"
#include "ddc/linalg.hpp"
#include "ddc/types.hpp"

namespace ddc::solver {

// Thrown when a linear subproblem cannot be solved to tolerance; nonlinear
// non-convergence is reported through the `converged` flags instead.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// State of the coupled iteration.
struct CoupledState {
  std::vector<double> flow;       // [ t | sigma row 0 | sigma row 1 | u | lam ]
  std::vector<double> transport;  // [ phi_1 | phi_2 ]
};

// One steady coupled problem, minus the iterate-dependent couplings (the
// advecting velocity and the transported fields entering viscosity and
// buoyancy), which the drivers wire up on every sweep.
struct CoupledProblem {
  assembly::FlowCoefficients flow;
  assembly::TransportCoefficients transport;
  // phi/advection slots are overwritten by the drivers.
  assembly::FlowFields flow_fields;
  // advection / lagged_gradient slots are overwritten by the drivers.
  assembly::TransportFields transport_fields;
  assembly::TransportOptions transport_opts;
};

struct SolveOptions {
  double outer_tol = 1e-6;  // relative coefficient increment between sweeps
  int max_outer = 50;
  double inner_tol = 1e-10;  // relative increment of the flow linearization
  int max_inner = 25;
  assembly::Linearization linearization = assembly::Linearization::kNewton;
  linalg::SolverOptions linear;  // linear-solver policy for both blocks
  int extra_quadrature = 0;
  // Optional reuse of large-system factorizations across repeated solves of
  // the same block (Newton sweeps, fixed-point sweeps, time steps).  The
  // drivers create their own slots when these are null; supply slots only to
  // extend the reuse across separate driver calls on the same systems.
  linalg::FactorSlot* flow_factor_slot = nullptr;
  linalg::FactorSlot* transport_factor_slot = nullptr;
};

struct FixedPointReport {
  bool converged = false;
  int outer_iterations = 0;
  int flow_iterations = 0;  // accumulated inner linearized flow solves
  double last_increment = 0.0;
  // Relative algebraic residuals of the two blocks re-assembled at the
  // returned state (one-sided convective form, matrix-side advection), i.e.
  // a certificate that the state solves the coupled nonlinear system.
  double flow_residual = 0.0;
  double transport_residual = 0.0;
};

// Solve the flow block at frozen transported fields phi, iterating the
// configured linearization from the velocity part of `x` (which also serves
// as the warm start).  Returns the number of linearized solves performed;
// the iteration stops once the relative increment drops below
// opts.inner_tol or after opts.max_inner solves.
int solve_flow(const assembly::FlowSystem& sys, const CoupledProblem& problem,
               const assembly::CellField<Vec2>& phi, std::vector<double>& x,
               const SolveOptions& opts = {});

// Solve the transport block for a given advecting velocity field (and, in
// the lagged variant, the transported-gradient iterate).
void solve_transport(const assembly::TransportSystem& sys,
                     const CoupledProblem& problem,
                     const assembly::CellField<Vec2>& advection,
                     const assembly::CellField<Mat2>& lagged_gradient,
                     std::vector<double>& x, const SolveOptions& opts = {});

// Linear startup state: transport without advection, then flow without
// convection, both with the full boundary data of `problem`.
CoupledState initial_guess(const assembly::FlowSystem& flow_sys,
                           const assembly::TransportSystem& transport_sys,
                           const CoupledProblem& problem,
                           const SolveOptions& opts = {});

// Alternate flow and transport solves until the combined relative increment
// drops below opts.outer_tol; `state` is the starting point and receives the
// result.
FixedPointReport solve_coupled(const assembly::FlowSystem& flow_sys,
                               const assembly::TransportSystem& transport_sys,
                               const CoupledProblem& problem,
                               CoupledState& state,
                               const SolveOptions& opts = {});

// Pressure recovered from the pseudostress and velocity,
//   p_h = -1/2 tr(sigma_h + u_h (x) u_h) + correction,
// where the correction (1/(2|Omega|)) ||u_h||_0^2 restores the zero mean.
struct PressureField {
  assembly::CellField<double> value;
  double correction = 0.0;
  double mean = 0.0;  // integral of the recovered pressure (diagnostic)
};
PressureField recover_pressure(const assembly::FlowSystem& sys,
                               std::vector<double> x);

// ---------------------------------------------------------------------------
// Backward Euler
// ---------------------------------------------------------------------------

struct TimeDependentProblem {
  CoupledProblem steady;  // physical coefficients; kappa2 is recomputed
  double dt = 0.02;
  int steps = 25;
  std::function<Vec2(Vec2)> initial_velocity;
  std::function<Vec2(Vec2)> initial_transport;
  // Optional observer called after every accepted step.
  std::function<void(int step, double time, const CoupledState&,
                     const FixedPointReport&)>
      on_step;
};

struct TimeMarchResult {
  CoupledState state;  // state at time steps * dt
  std::vector<FixedPointReport> reports;
  bool converged = false;  // every step's fixed point converged
};

// March `steps` backward-Euler steps of length dt.  Each step solves the
// steady problem with reaction weight gamma + 1/dt, kappa2 = 1/(gamma+1/dt),
// the previous velocity folded into the flow source, and the previous
// transported fields entering the transport load; the previous state also
// warm-starts the fixed point.
TimeMarchResult time_march(const assembly::FlowSystem& flow_sys,
                           const assembly::TransportSystem& transport_sys,
                           const TimeDependentProblem& problem,
                           const SolveOptions& opts = {});

}  // namespace ddc::solver
