#pragma once

// File output: convergence tables (CSV), legacy-format VTK field
// snapshots, and a machine-readable JSON run summary.  All writers are
// deterministic: identical inputs produce byte-identical files.

#include <string>
#include <vector>

#include "ddc/assembly.hpp"
#include "ddc/config.hpp"
#include "ddc/solver.hpp"
#include "ddc/verify.hpp"

namespace ddc::io {

// Convergence table with the column layout
//   k,h,N,e_t,r_t,e_sig,r_sig,e_u,r_u,e_phi,r_phi,e_p,r_p
// Rate fields of the first row are left empty.  The compact form rounds
// errors and h to three significant digits (scientific) and rates to two
// decimals; the full form keeps maximum precision for reprocessing.
std::string format_table(int k, const std::vector<verify::StudyRow>& rows,
                         bool full);
void write_table(const std::string& path, int k,
                 const std::vector<verify::StudyRow>& rows, bool full);

// Legacy ASCII VTK snapshot of one solved level: vertex data for the
// velocity and the transported pair, cell data for the recovered pressure
// (evaluated at cell centroids).
void write_vtk(const std::string& path, const assembly::FlowSystem& flow,
               const assembly::TransportSystem& transport,
               const solver::CoupledState& state);

// Run summary serialized as JSON, covering every parameter that shaped
// the run (including the stabilization weights actually used) and the
// per-level iteration counts, residuals, errors, and rates.
struct RunInfo {
  std::string command;  // "run-example" or "run-config"
  int example = 1;
  int k = 0;
  int levels = 0;
  bool transient = false;
  double dt = 0.0;
  int steps = 0;
  std::string viscosity;
  double nu1 = 0.0;
  double nu2 = 0.0;
  double gamma = 0.0;
  Vec2 alpha{0.0, 0.0};
  Vec2 conductivity{0.0, 0.0};
  config::Kappas kappas;  // effective weights (kappa2 after any time shift)
  bool picard = false;
  bool lagged = false;
  double outer_tol = 0.0;
  int max_outer = 0;
  int jobs = 1;
  bool vtk = false;
  bool converged = false;
  std::vector<verify::StudyRow> rows;
};
void write_run_info(const std::string& path, const RunInfo& info);

}  // namespace ddc::io
