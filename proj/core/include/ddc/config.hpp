#pragma once

// Built-in experiment definitions and config-file loading.  An Example
// bundles everything a refinement study needs: coefficients, manufactured
// data, boundary classification, the mesh family per level, and (for the
// transient experiment) initial data and time-step controls.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddc/mesh.hpp"
#include "ddc/mms.hpp"
#include "ddc/solver.hpp"
#include "ddc/types.hpp"

namespace ddc::config {

// Boundary tags used by the built-in examples.
inline constexpr int kDirichletTag = 1;
inline constexpr int kNeumannTag = 2;

// Kinematic-viscosity registry for config files.  Spatial families ignore
// the transported fields; "affine_fields" is the field-dependent pathway.
//   constant:<v>            -> v
//   rational                -> 1 / (x1^2 + x2^2 + 1)
//   exponential             -> 1 + exp(-x1^2)
//   affine_fields:<a>,<b>,<c> -> a + b*phi_1 + c*phi_2
// Throws std::invalid_argument for unknown names or bad parameters.
std::function<double(Vec2, Vec2)> viscosity(const std::string& name);

// Stabilization weights.  The default is the midpoint choice
// kappa1 = nu1/2, kappa2 = 1/gamma, kappa3 = nu1/(2 nu2^2), where
// nu1 <= nu <= nu2 are the viscosity bounds.
struct Kappas {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
};
Kappas default_kappas(double nu1, double nu2, double gamma);

// Admissibility warnings for user-chosen weights: empty when (k1, k2, k3)
// lies inside the coercivity range
//   0 < k3 < 2 nu1 / nu2^2,  0 < k2 < 4/gamma,  0 < k1 < 2(2 nu1 - k3 nu2^2).
std::vector<std::string> kappa_warnings(const Kappas& k, double nu1,
                                        double nu2, double gamma);

struct Example {
  int id = 1;
  int order = 0;  // polynomial degree k of the lowest-order fields
  bool transient = false;
  double dt = 0.02;
  int steps = 25;
  int default_levels = 4;
  std::string viscosity_name;      // registry key actually in effect
  double nu1 = 1.0;                // viscosity bounds behind the weights
  double nu2 = 2.0;
  solver::CoupledProblem problem;  // fully wired coefficients and data
  std::optional<mms::ExactSolution> exact;      // absent for the transient case
  std::function<Vec2(Vec2)> initial_velocity;   // transient only
  std::function<Vec2(Vec2)> initial_transport;  // transient only
  std::function<mesh::Mesh(int level)> mesh_for_level;
};

// Scalar overrides applied on top of a built-in example.  Overriding the
// viscosity is only possible for the transient experiment; the steady
// experiments' manufactured data pin it.
struct PhysicsOverrides {
  std::optional<double> gamma;
  std::optional<Vec2> alpha;
  std::optional<Vec2> conductivity;
  std::optional<std::string> viscosity;
  std::optional<double> nu1;
  std::optional<double> nu2;
  std::optional<Kappas> kappas;
  std::optional<double> dt;
  std::optional<int> steps;
};

// The built-in experiments (id 1, 2, 3; order k 0, 1, 2).  Throws
// std::invalid_argument outside the contract or for unusable overrides.
Example make_example(int id, int k);
Example make_example(int id, int k, const PhysicsOverrides& overrides);

// ------------------------------ config files ------------------------------

// Parse or validation failure; `line` is 1-based (0 = file level).
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& message, int line_number);
  int line = 0;
};

// A loaded config: the wired example plus run controls.
struct FileConfig {
  Example example;
  std::vector<std::string> warnings;  // e.g. weight admissibility
  std::string out_dir = "out";
  bool vtk = false;
  bool picard = false;
  bool lagged = false;
  int levels = 0;  // 0 = example default
  int jobs = 1;
  double outer_tol = 1e-6;
  int max_outer = 50;
};

// Loads a flat INI-style file with sections [domain], [physics],
// [discretization], [solver], [output] (layout documented in the README).
// Unknown sections or keys, malformed values, and contract violations
// (for instance gamma <= 0) raise ConfigError with the line number.
FileConfig load_config(const std::string& path);

}  // namespace ddc::config
