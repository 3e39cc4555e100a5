// Nonlinear-driver tests on the shared polynomial member solution (order
// k = 2 contains it exactly), so every solve must land on the interpolant
// to solver precision.

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "common/coupled_fixture.hpp"
#include "ddc/assembly.hpp"
#include "ddc/mesh.hpp"
#include "ddc/solver.hpp"
#include "ddc/types.hpp"

using ddc::Mat2;
using ddc::Vec2;
using ddc::mesh::Mesh;
namespace asm2 = ddc::assembly;
namespace solver = ddc::solver;
using fixture::make_problem;
using fixture::p_ex;
using fixture::phi_ex;
using fixture::sigma_ex;
using fixture::u_ex;

namespace {

void check_state(const asm2::FlowSystem& flow_sys,
                 const asm2::TransportSystem& transport_sys,
                 const solver::CoupledState& state, double tol) {
  const auto& m = flow_sys.mesh();
  for (int t = 0; t < m.num_triangles(); ++t) {
    for (const auto& [xi, eta] : {std::array<double, 2>{0.25, 0.25},
                                  std::array<double, 2>{0.2, 0.55}}) {
      const Vec2 q = m.map_to_physical(t, xi, eta);
      CHECK(norm(flow_sys.velocity_value(state.flow, t, xi, eta) - u_ex(q)) <
            tol);
      const Mat2 ds =
          flow_sys.stress_value(state.flow, t, xi, eta) - sigma_ex(q);
      CHECK(std::sqrt(ddot(ds, ds)) < tol);
      CHECK(norm(transport_sys.value(state.transport, t, xi, eta) -
                 phi_ex(q)) < tol);
    }
  }
}

}  // namespace

TEST_CASE("flow iteration converges to the member solution", "[solver]") {
  const Mesh m = Mesh::unit_square_crisscross(1);
  const asm2::FlowSystem flow_sys(m, 2);
  const solver::CoupledProblem problem = make_problem();

  solver::SolveOptions opts;
  const auto phi_field = asm2::analytic<Vec2>(phi_ex);

  SECTION("two-sided linearization") {
    std::vector<double> x(flow_sys.size(), 0.0);
    const int its = solver::solve_flow(flow_sys, problem, phi_field, x, opts);
    CHECK(its < 10);
    for (const auto& [xi, eta] : {std::array<double, 2>{0.3, 0.3}}) {
      const Vec2 q = m.map_to_physical(0, xi, eta);
      CHECK(norm(flow_sys.velocity_value(x, 0, xi, eta) - u_ex(q)) < 1e-8);
      const Mat2 ds = flow_sys.stress_value(x, 0, xi, eta) - sigma_ex(q);
      CHECK(std::sqrt(ddot(ds, ds)) < 1e-8);
    }
  }

  SECTION("one-sided linearization") {
    solver::SolveOptions picard = opts;
    picard.linearization = asm2::Linearization::kPicard;
    std::vector<double> x(flow_sys.size(), 0.0);
    const int its =
        solver::solve_flow(flow_sys, problem, phi_field, x, picard);
    CHECK(its <= picard.max_inner);
    const Vec2 q = m.map_to_physical(0, 0.3, 0.3);
    CHECK(norm(flow_sys.velocity_value(x, 0, 0.3, 0.3) - u_ex(q)) < 1e-7);
  }
}

TEST_CASE("coupled fixed point lands on the member solution", "[solver]") {
  const Mesh m = Mesh::unit_square_crisscross(2);
  const asm2::FlowSystem flow_sys(m, 2);
  const asm2::TransportSystem transport_sys(m, 2);
  solver::CoupledProblem problem = make_problem();

  solver::SolveOptions opts;
  opts.outer_tol = 1e-10;

  SECTION("with the two-sided inner linearization") {}
  SECTION("with the one-sided inner linearization") {
    opts.linearization = asm2::Linearization::kPicard;
  }
  SECTION("with lagged transport advection") {
    // Same fixed point, symmetric transport matrices.
    problem.transport_opts.lag_advection = true;
  }

  solver::CoupledState state =
      solver::initial_guess(flow_sys, transport_sys, problem, opts);
  const solver::FixedPointReport report =
      solver::solve_coupled(flow_sys, transport_sys, problem, state, opts);

  CHECK(report.converged);
  CHECK(report.outer_iterations <= 30);
  CHECK(report.last_increment <= 1e-10);
  CHECK(report.flow_residual < 1e-9);
  CHECK(report.transport_residual < 1e-9);
  check_state(flow_sys, transport_sys, state, 1e-7);

  // Postprocessed pressure: value, gauge correction, and zero mean.
  const solver::PressureField pressure =
      solver::recover_pressure(flow_sys, state.flow);
  CHECK(std::abs(pressure.correction - 1.0 / 3.0) < 1e-7);
  CHECK(std::abs(pressure.mean) < 1e-7);
  for (int t = 0; t < m.num_triangles(); t += 3) {
    const Vec2 q = m.map_to_physical(t, 0.3, 0.4);
    CHECK(std::abs(pressure.value(t, 0.3, 0.4, q) - p_ex(q)) < 1e-7);
  }
}

TEST_CASE("time marching preserves a steady member solution", "[solver]") {
  const Mesh m = Mesh::unit_square_crisscross(1);
  const asm2::FlowSystem flow_sys(m, 2);
  const asm2::TransportSystem transport_sys(m, 2);

  solver::TimeDependentProblem problem;
  problem.steady = make_problem();
  problem.dt = 0.1;
  problem.steps = 3;
  problem.initial_velocity = u_ex;
  problem.initial_transport = phi_ex;

  int observed = 0;
  problem.on_step = [&](int step, double time, const solver::CoupledState&,
                        const solver::FixedPointReport& rep) {
    ++observed;
    CHECK(step == observed);
    CHECK(std::abs(time - 0.1 * step) < 1e-14);
    CHECK(rep.converged);
  };

  solver::SolveOptions opts;
  opts.outer_tol = 1e-10;
  const solver::TimeMarchResult result =
      solver::time_march(flow_sys, transport_sys, problem, opts);

  CHECK(result.converged);
  CHECK(observed == 3);
  REQUIRE(result.reports.size() == 3);
  check_state(flow_sys, transport_sys, result.state, 1e-7);

  CHECK_THROWS_AS(
      solver::time_march(flow_sys, transport_sys,
                         [&] {
                           auto bad = problem;
                           bad.dt = 0.0;
                           return bad;
                         }(),
                         opts),
      std::invalid_argument);
}
