// Command-line driver: runs the built-in refinement studies (or a config
// file variant), writing convergence tables, an optional set of VTK field
// snapshots, and a JSON run summary.
//
// Exit codes: 0 success, 2 validation/config error, 3 solver failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "ddc/config.hpp"
#include "ddc/io.hpp"
#include "ddc/solver.hpp"
#include "ddc/verify.hpp"

namespace {

namespace fs = std::filesystem;

void write_failed_marker(const std::string& out_dir,
                         const std::string& message) {
  std::ofstream marker(out_dir + "/FAILED");
  marker << message << "\n";
}

int run_study(const ddc::config::FileConfig& cfg, const std::string& command) {
  const ddc::config::Example& ex = cfg.example;

  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory '" << cfg.out_dir
              << "': " << ec.message() << "\n";
    return 2;
  }
  for (const std::string& warning : cfg.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }

  ddc::verify::StudyOptions opts;
  opts.levels = cfg.levels;
  opts.jobs = cfg.jobs;
  opts.lag_advection = cfg.lagged;
  opts.solve.outer_tol = cfg.outer_tol;
  opts.solve.max_outer = cfg.max_outer;
  if (cfg.picard) {
    opts.solve.linearization = ddc::assembly::Linearization::kPicard;
  }

  const int levels = cfg.levels > 0 ? cfg.levels : ex.default_levels;
  const std::string prefix = cfg.out_dir + "/";

  if (cfg.vtk) {
    opts.on_level = [&prefix](const ddc::verify::LevelContext& ctx) {
      if (ctx.is_reference) return;
      char name[64];
      std::snprintf(name, sizeof name, "fields_level%d.vtk", ctx.level);
      ddc::io::write_vtk(prefix + name, ctx.flow, ctx.transport, ctx.state);
    };
    if (ex.transient) {
      opts.on_step = [&prefix, levels](const ddc::verify::LevelContext& ctx,
                                       int step, double) {
        if (ctx.is_reference || ctx.level != levels - 1) return;
        char name[64];
        std::snprintf(name, sizeof name, "fields_level%d_step%02d.vtk",
                      ctx.level, step);
        ddc::io::write_vtk(prefix + name, ctx.flow, ctx.transport, ctx.state);
      };
    }
  }

  ddc::verify::StudyResult result;
  try {
    result = ddc::verify::convergence_study(ex, opts);
  } catch (const ddc::solver::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    write_failed_marker(cfg.out_dir, e.what());
    return 3;
  }

  const std::string table = std::to_string(ex.id);
  ddc::io::write_table(prefix + "table" + table + ".csv", ex.order,
                       result.rows, /*full=*/false);
  ddc::io::write_table(prefix + "table" + table + ".full.csv", ex.order,
                       result.rows, /*full=*/true);

  ddc::io::RunInfo info;
  info.command = command;
  info.example = ex.id;
  info.k = ex.order;
  info.levels = levels;
  info.transient = ex.transient;
  info.dt = ex.dt;
  info.steps = ex.steps;
  info.viscosity = ex.viscosity_name;
  info.nu1 = ex.nu1;
  info.nu2 = ex.nu2;
  info.gamma = ex.problem.flow.gamma;
  info.alpha = ex.problem.flow.alpha;
  info.conductivity = ex.problem.transport.conductivity;
  info.kappas = {ex.problem.flow.kappa1,
                 ex.transient ? 1.0 / (ex.problem.flow.gamma + 1.0 / ex.dt)
                              : ex.problem.flow.kappa2,
                 ex.problem.flow.kappa3};
  info.picard = cfg.picard;
  info.lagged = cfg.lagged;
  info.outer_tol = cfg.outer_tol;
  info.max_outer = cfg.max_outer;
  info.jobs = cfg.jobs;
  info.vtk = cfg.vtk;
  info.converged = result.converged;
  info.rows = result.rows;
  ddc::io::write_run_info(prefix + "run.json", info);

  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const ddc::verify::StudyRow& row = result.rows[i];
    std::printf("level %zu: h = %.3e  N = %d  outer = %d", i, row.h,
                row.unknowns, row.outer_iterations);
    if (i > 0) {
      std::printf(
          "  rates: t %.2f  sig %.2f  u %.2f  phi %.2f  p %.2f",
          row.rates.strain, row.rates.stress, row.rates.velocity,
          row.rates.transport, row.rates.pressure);
    }
    std::printf("\n");
  }
  if (result.used_reference) {
    std::printf("errors measured against a once-refined reference run\n");
  }

  if (!result.converged) {
    std::cerr << "solver failure: a fixed-point iteration did not reach the "
                 "tolerance\n";
    write_failed_marker(cfg.out_dir,
                        "fixed-point iteration did not converge");
    return 3;
  }
  std::printf("wrote %stable%s.csv, .full.csv, run.json\n", prefix.c_str(),
              table.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed finite element studies of coupled flow and transport "
               "in porous media"};
  app.require_subcommand(1);
  app.footer("The environment variable DDCONVECT_SEED is reserved for future "
             "use; all runs are deterministic.");

  int id = 1;
  int k = -1;
  int levels = 0;
  int steps = 0;
  int jobs = 1;
  std::string out = "out";
  bool vtk = false;
  bool picard = false;
  bool lagged = false;

  CLI::App* run_example =
      app.add_subcommand("run-example", "Run a built-in experiment");
  run_example->add_option("id", id, "Experiment id (1, 2, or 3)")
      ->required()
      ->check(CLI::Range(1, 3));
  run_example->add_option("--k", k, "Polynomial order (0, 1, or 2)")
      ->check(CLI::Range(0, 2));
  run_example->add_option("--levels", levels, "Number of refinement levels")
      ->check(CLI::PositiveNumber);
  run_example->add_option("--steps", steps, "Time steps (example 3 only)")
      ->check(CLI::PositiveNumber);
  run_example->add_option("--out", out, "Output directory");
  run_example->add_flag("--vtk", vtk, "Write VTK field snapshots");
  run_example->add_flag("--picard", picard,
                        "One-sided (Picard) flow linearization");
  run_example->add_flag("--lagged", lagged,
                        "Move transport advection to the right-hand side");
  run_example->add_option("--jobs", jobs, "Levels solved concurrently")
      ->check(CLI::PositiveNumber);

  std::string config_path;
  CLI::App* run_config =
      app.add_subcommand("run-config", "Run from a config file");
  run_config->add_option("path", config_path, "Config file path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ddc::config::FileConfig cfg;
    std::string command;
    if (run_example->parsed()) {
      command = "run-example";
      ddc::config::PhysicsOverrides overrides;
      if (steps > 0) {
        if (id != 3) {
          throw std::invalid_argument("--steps applies only to example 3");
        }
        overrides.steps = steps;
      }
      const int order = k >= 0 ? k : (id == 2 ? 1 : 0);
      cfg.example = ddc::config::make_example(id, order, overrides);
      cfg.out_dir = out;
      cfg.vtk = vtk;
      cfg.picard = picard;
      cfg.lagged = lagged;
      cfg.levels = levels;
      cfg.jobs = jobs;
    } else {
      command = "run-config";
      cfg = ddc::config::load_config(config_path);
    }
    return run_study(cfg, command);
  } catch (const ddc::config::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
