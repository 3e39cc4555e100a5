#pragma once

// Accuracy measurement for mesh-refinement studies: error norms of a
// computed coupled solution against either an analytic reference or a
// reference solution on a nested, uniformly refined mesh, plus
// experimental convergence orders between levels.

#include <array>
#include <functional>
#include <vector>

#include "ddc/assembly.hpp"
#include "ddc/config.hpp"
#include "ddc/mesh.hpp"
#include "ddc/mms.hpp"
#include "ddc/solver.hpp"

namespace ddc::verify {

// Norms in which accuracy is reported: strain and pressure in L2,
// pseudostress in H(div), velocity and the transported pair in H1.
struct ErrorNorms {
  double strain = 0.0;
  double stress = 0.0;
  double velocity = 0.0;
  double transport = 0.0;
  double pressure = 0.0;
};

// Errors of a coupled solution against an analytic reference.  The
// discrete pressure is recovered from the flow unknowns before comparison.
ErrorNorms errors_against_exact(const assembly::FlowSystem& flow,
                                const assembly::TransportSystem& transport,
                                const solver::CoupledState& state,
                                const mms::ExactSolution& exact,
                                int extra_quadrature = 3);

// Locates points of a coarse mesh inside a descendant mesh obtained from
// it by repeated uniform refinement, following the stored parent links.
class NestedEvaluator {
 public:
  // The chain runs coarse to fine; entry i+1 must be refine_red() of
  // entry i.  The meshes must outlive the evaluator.
  explicit NestedEvaluator(std::vector<const mesh::Mesh*> chain);

  struct Location {
    int tri = 0;
    double xi = 0.0;
    double eta = 0.0;
  };

  // Finest-mesh location of reference point (xi, eta) in coarse triangle t.
  Location locate(int t, double xi, double eta) const;

 private:
  std::vector<const mesh::Mesh*> chain_;
  // children_[i][t] = the four triangles of chain_[i+1] refined from t of
  // chain_[i].
  std::vector<std::vector<std::array<int, 4>>> children_;
};

// Errors of a coarse-mesh solution against a reference solution on a
// nested finer mesh (for problems with no closed-form solution).  Both
// pressures are recovered from their own flow unknowns.
ErrorNorms errors_against_fine(const assembly::FlowSystem& flow,
                               const assembly::TransportSystem& transport,
                               const solver::CoupledState& state,
                               const assembly::FlowSystem& fine_flow,
                               const assembly::TransportSystem& fine_transport,
                               const solver::CoupledState& fine_state,
                               const NestedEvaluator& nested,
                               int extra_quadrature = 3);

// Experimental order of convergence between consecutive refinement
// levels: log(e_c / e_f) / log(h_c / h_f).  Throws std::invalid_argument
// for non-positive inputs or equal mesh sizes.
double eoc(double error_coarse, double error_fine, double h_coarse,
           double h_fine);

// One level of a refinement study.
struct StudyRow {
  double h = 0.0;
  int unknowns = 0;          // flow plus transport
  ErrorNorms errors;
  ErrorNorms rates;          // relative to the previous row; first row 0
  int outer_iterations = 0;  // fixed-point sweeps (summed over time steps)
  int flow_iterations = 0;   // inner linearization solves (summed)
  double last_increment = 0.0;    // largest accepted final increment
  double flow_residual = 0.0;     // largest certified relative residual
  double transport_residual = 0.0;
  double pressure_integral = 0.0;  // integral of the recovered pressure
  double pressure_norm = 0.0;      // its L2 norm
};

// Fills `rates` of every row from consecutive errors and mesh sizes.
void fill_rates(std::vector<StudyRow>& rows);

// ------------------------------ studies ------------------------------

// Everything a caller may want to observe about one solved level while
// its systems are still alive (for instance to write field files).
struct LevelContext {
  int level = 0;  // 0-based; equals the study depth for the reference run
  bool is_reference = false;
  const mesh::Mesh& mesh;
  const assembly::FlowSystem& flow;
  const assembly::TransportSystem& transport;
  const solver::CoupledState& state;
};

struct StudyOptions {
  int levels = 0;  // number of study levels; 0 = the example's default
  int jobs = 1;    // levels solved concurrently
  solver::SolveOptions solve;
  bool lag_advection = false;  // move transport advection to the right side
  // Called after a level converges (any thread; calls are serialized).
  std::function<void(const LevelContext&)> on_level;
  // Transient runs: called after every accepted time step (serialized).
  std::function<void(const LevelContext&, int step, double time)> on_step;
};

struct StudyResult {
  std::vector<StudyRow> rows;  // one per study level, rates filled
  bool converged = true;       // every solve on every level converged
  bool used_reference = false;
};

// Solves every refinement level of a built-in experiment and measures the
// error norms: the steady experiments against their exact solutions, the
// transient one at its final time against a once-more-refined reference
// solution evaluated through the nesting.  Solver failures are rethrown
// annotated with the level that failed.
StudyResult convergence_study(const config::Example& example,
                              const StudyOptions& options = {});

}  // namespace ddc::verify
