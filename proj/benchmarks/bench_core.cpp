// Microbenchmarks for the hot paths: element assembly of the two blocks,
// the preconditioned Krylov solve, and one full coupled fixed point on a
// coarse mesh.

#include <benchmark/benchmark.h>

#include "ddc/assembly.hpp"
#include "ddc/config.hpp"
#include "ddc/linalg.hpp"
#include "ddc/solver.hpp"

namespace {

ddc::config::Example example_one(int k) {
  return ddc::config::make_example(1, k);
}

void BM_AssembleFlow(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const ddc::config::Example ex = example_one(k);
  const ddc::mesh::Mesh mesh = ex.mesh_for_level(0);
  const ddc::assembly::FlowSystem sys(mesh, k);
  for (auto _ : state) {
    ddc::assembly::AssembledSystem out =
        sys.assemble(ex.problem.flow, ex.problem.flow_fields);
    benchmark::DoNotOptimize(out.rhs.data());
  }
  state.SetLabel("unknowns=" + std::to_string(sys.size()));
}

void BM_AssembleTransport(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const ddc::config::Example ex = example_one(k);
  const ddc::mesh::Mesh mesh = ex.mesh_for_level(0);
  const ddc::assembly::TransportSystem sys(mesh, k);
  for (auto _ : state) {
    ddc::assembly::AssembledSystem out =
        sys.assemble(ex.problem.transport, ex.problem.transport_fields,
                     ex.problem.transport_opts);
    benchmark::DoNotOptimize(out.rhs.data());
  }
  state.SetLabel("unknowns=" + std::to_string(sys.size()));
}

void BM_KrylovFlowSolve(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const ddc::config::Example ex = example_one(k);
  const ddc::mesh::Mesh mesh = ex.mesh_for_level(0);
  const ddc::assembly::FlowSystem sys(mesh, k);
  const ddc::assembly::AssembledSystem lin =
      sys.assemble(ex.problem.flow, ex.problem.flow_fields);
  ddc::linalg::SolverOptions opts;
  opts.dense_threshold = 0;  // force the preconditioned Krylov path
  for (auto _ : state) {
    std::vector<double> x(lin.rhs.size(), 0.0);
    ddc::linalg::SolveReport report =
        ddc::linalg::solve(lin.matrix, lin.rhs, x, opts);
    benchmark::DoNotOptimize(report.iterations);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetLabel("unknowns=" + std::to_string(sys.size()));
}

void BM_CoupledFixedPoint(benchmark::State& state) {
  const ddc::config::Example ex = example_one(0);
  const ddc::mesh::Mesh mesh = ex.mesh_for_level(0);
  const ddc::assembly::FlowSystem flow(mesh, 0);
  const ddc::assembly::TransportSystem transport(mesh, 0);
  for (auto _ : state) {
    ddc::solver::CoupledState x =
        ddc::solver::initial_guess(flow, transport, ex.problem);
    ddc::solver::FixedPointReport report =
        ddc::solver::solve_coupled(flow, transport, ex.problem, x);
    benchmark::DoNotOptimize(report.last_increment);
  }
  state.SetLabel("unknowns=" +
                 std::to_string(flow.size() + transport.size()));
}

BENCHMARK(BM_AssembleFlow)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleTransport)
    ->Arg(0)
    ->Arg(1)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KrylovFlowSolve)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoupledFixedPoint)
    ->Unit(benchmark::kMillisecond)
    ->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
