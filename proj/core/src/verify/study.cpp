#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ddc/quadrature.hpp"
#include "ddc/verify.hpp"

namespace ddc::verify {

namespace {

struct LevelData {
  std::unique_ptr<mesh::Mesh> mesh;
  std::unique_ptr<assembly::FlowSystem> flow;
  std::unique_ptr<assembly::TransportSystem> transport;
  solver::CoupledState state;
  std::vector<solver::FixedPointReport> reports;
  std::exception_ptr failure;
};

// Integral and L2 norm of the recovered pressure on one level.
void pressure_diagnostics(const assembly::FlowSystem& flow,
                          const solver::CoupledState& state, StudyRow& row) {
  const solver::PressureField pressure =
      solver::recover_pressure(flow, state.flow);
  const mesh::Mesh& m = flow.mesh();
  const quad::TriangleRule rule = quad::triangle_rule(
      std::min(flow.quadrature_degree(2), quad::max_triangle_degree()));
  double integral = 0.0;
  double norm2 = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const double scale = 2.0 * m.area(t);
    for (int q = 0; q < rule.size; ++q) {
      const quad::TriQuadPoint& qp = rule.points[q];
      const double w = qp.w * scale;
      const double p = pressure.value(t, qp.x, qp.y,
                                      m.map_to_physical(t, qp.x, qp.y));
      integral += w * p;
      norm2 += w * p * p;
    }
  }
  row.pressure_integral = integral;
  row.pressure_norm = std::sqrt(norm2);
}

}  // namespace

StudyResult convergence_study(const config::Example& example,
                              const StudyOptions& options) {
  const int levels =
      options.levels > 0 ? options.levels : example.default_levels;
  if (levels < 2) {
    throw std::invalid_argument("a refinement study needs at least 2 levels");
  }
  const int total = levels + (example.transient ? 1 : 0);

  // Meshes and systems are built up front (serial, deterministic); only
  // the solves run concurrently.
  std::vector<LevelData> data(total);
  for (int i = 0; i < total; ++i) {
    data[i].mesh =
        std::make_unique<mesh::Mesh>(example.mesh_for_level(i));
    data[i].flow =
        std::make_unique<assembly::FlowSystem>(*data[i].mesh, example.order);
    data[i].transport = std::make_unique<assembly::TransportSystem>(
        *data[i].mesh, example.order);
  }

  solver::CoupledProblem problem = example.problem;
  problem.transport_opts.lag_advection = options.lag_advection;

  std::mutex callback_mutex;
  const auto run_level = [&](int i) {
    LevelData& d = data[i];
    const bool is_reference = example.transient && i == levels;
    try {
      if (example.transient) {
        solver::TimeDependentProblem march;
        march.steady = problem;
        march.dt = example.dt;
        march.steps = example.steps;
        march.initial_velocity = example.initial_velocity;
        march.initial_transport = example.initial_transport;
        if (options.on_step) {
          march.on_step = [&](int step, double time,
                              const solver::CoupledState& state,
                              const solver::FixedPointReport&) {
            const std::scoped_lock lock(callback_mutex);
            options.on_step(LevelContext{i, is_reference, *d.mesh, *d.flow,
                                         *d.transport, state},
                            step, time);
          };
        }
        solver::TimeMarchResult result =
            solver::time_march(*d.flow, *d.transport, march, options.solve);
        d.state = std::move(result.state);
        d.reports = std::move(result.reports);
      } else {
        d.state =
            solver::initial_guess(*d.flow, *d.transport, problem, options.solve);
        d.reports.push_back(solver::solve_coupled(*d.flow, *d.transport,
                                                  problem, d.state,
                                                  options.solve));
      }
      if (options.on_level) {
        const std::scoped_lock lock(callback_mutex);
        options.on_level(LevelContext{i, is_reference, *d.mesh, *d.flow,
                                      *d.transport, d.state});
      }
    } catch (const solver::SolverError& e) {
      d.failure = std::make_exception_ptr(solver::SolverError(
          "level " + std::to_string(i) + ": " + e.what()));
    } catch (...) {
      d.failure = std::current_exception();
    }
  };

  const int jobs = std::max(1, std::min(options.jobs, total));
  if (jobs == 1) {
    for (int i = 0; i < total; ++i) run_level(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int j = 0; j < jobs; ++j) {
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
          run_level(i);
        }
      });
    }
    for (std::thread& worker : pool) worker.join();
  }
  for (const LevelData& d : data) {
    if (d.failure) std::rethrow_exception(d.failure);
  }

  StudyResult result;
  result.used_reference = example.transient;
  result.rows.resize(levels);
  for (int i = 0; i < levels; ++i) {
    const LevelData& d = data[i];
    StudyRow& row = result.rows[i];
    row.h = d.mesh->h_max();
    row.unknowns = d.flow->size() + d.transport->size();
    for (const solver::FixedPointReport& report : d.reports) {
      row.outer_iterations += report.outer_iterations;
      row.flow_iterations += report.flow_iterations;
      row.last_increment = std::max(row.last_increment, report.last_increment);
      row.flow_residual = std::max(row.flow_residual, report.flow_residual);
      row.transport_residual =
          std::max(row.transport_residual, report.transport_residual);
      result.converged = result.converged && report.converged;
    }
    pressure_diagnostics(*d.flow, d.state, row);

    if (example.transient) {
      std::vector<const mesh::Mesh*> chain;
      for (int j = i; j <= levels; ++j) chain.push_back(data[j].mesh.get());
      const NestedEvaluator nested(chain);
      row.errors = errors_against_fine(
          *d.flow, *d.transport, d.state, *data[levels].flow,
          *data[levels].transport, data[levels].state, nested);
    } else {
      row.errors = errors_against_exact(*d.flow, *d.transport, d.state,
                                        *example.exact);
    }
  }
  if (example.transient) {
    for (const solver::FixedPointReport& report : data[levels].reports) {
      result.converged = result.converged && report.converged;
    }
  }
  fill_rates(result.rows);
  return result;
}

}  // namespace ddc::verify
