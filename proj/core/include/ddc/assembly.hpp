#pragma once

// Assembly of the two linearized subproblems solved inside the coupled
// fixed-point loop:
//
//  * FlowSystem      - the augmented strain / pseudostress / velocity block
//                      with dof layout
//                        [ t | sigma row 0 | sigma row 1 | u_x | u_y | lam ],
//                      where lam is the scalar multiplier enforcing the zero
//                      mean trace of the pseudostress,
//  * TransportSystem - the two-component temperature/concentration block
//                      with layout [ phi_1 | phi_2 ].
//
// Assemblers emit a CSR matrix and right-hand side with Dirichlet rows
// eliminated symmetrically (see linalg::SystemBuilder).  Iterate-dependent
// data (the transported fields entering the viscosity and buoyancy, the
// advecting velocity, manufactured sources) is passed as sampling callbacks
// so the same code serves analytic data, discrete iterates, and the
// backward-Euler effective sources composed by the time stepper.

#include <functional>
#include <vector>

#include "ddc/fespace.hpp"
#include "ddc/linalg.hpp"
#include "ddc/mesh.hpp"
#include "ddc/types.hpp"

namespace ddc::assembly {

// A field sampled inside element loops: triangle id, reference point,
// physical point.  The physical point is always map_to_physical(t, xi, eta);
// it is passed along so analytic closures do not recompute it.
template <typename T>
using CellField = std::function<T(int t, double xi, double eta, Vec2 x)>;

// Wrap an analytic (physical-coordinates) function as a CellField.
template <typename T>
CellField<T> analytic(std::function<T(Vec2)> f) {
  return [f = std::move(f)](int, double, double, Vec2 x) { return f(x); };
}

struct AssembledSystem {
  linalg::CsrMatrix matrix;
  std::vector<double> rhs;
};

// ---------------------------------------------------------------------------
// Geometry of boundary edges, oriented like the global edge (a -> b).
// ---------------------------------------------------------------------------
struct BoundaryEdge {
  int tri = -1;
  int edge = -1;
  int tag = 0;
  Vec2 ref_a;          // reference coordinates of global endpoint a
  Vec2 ref_b;          // reference coordinates of global endpoint b
  Vec2 normal;         // outward unit normal
  double length = 0.0;
};

// All boundary edges, each seen from its unique adjacent triangle, ordered by
// (triangle, local edge).
std::vector<BoundaryEdge> boundary_edges(const mesh::Mesh& mesh);

// ---------------------------------------------------------------------------
// Flow block
// ---------------------------------------------------------------------------

// Physical coefficients and stabilization weights.  For time stepping, gamma
// is the effective reaction weight (gamma + 1/dt) and kappa2 its reciprocal;
// the previous-step velocity enters through FlowFields::source.
struct FlowCoefficients {
  double gamma = 1.0;
  // Viscosity nu(x, phi(x)); spatially defined viscosities ignore the second
  // argument.
  std::function<double(Vec2, Vec2)> nu;
  Vec2 alpha{1.0, 1.0};     // buoyancy weights of the transported fields
  Vec2 gravity{0.0, -1.0};
  double kappa1 = 0.5;
  double kappa2 = 1.0;
  double kappa3 = 0.125;
};

// Iterate-dependent fields.  Empty std::function means "identically zero"
// (for `advection` it omits the convective bilinear form entirely).
struct FlowFields {
  CellField<Vec2> phi;        // transported fields (buoyancy, viscosity arg)
  CellField<Vec2> advection;  // velocity iterate w of the convective form
  CellField<Vec2> source;     // volume source entering the v and tau rows
  std::function<Vec2(Vec2)> dirichlet;  // boundary velocity; empty = no-slip
};

enum class Linearization {
  kPicard,  // one-sided convective form, no right-hand-side correction
  kNewton,  // two-sided convective form + quadratic right-hand-side term
};

struct FlowOptions {
  Linearization linearization = Linearization::kPicard;
  bool constrain_velocity = true;  // eliminate boundary velocity dofs
  bool with_multiplier = true;     // border with the mean-trace row/column
  int extra_quadrature = 0;        // raise quadrature degree (verification)
};

class FlowSystem {
 public:
  FlowSystem(const mesh::Mesh& mesh, int k);

  const mesh::Mesh& mesh() const { return *mesh_; }
  int order() const { return k_; }

  const fem::StrainSpace& strain() const { return strain_; }
  const fem::RTSpace& stress() const { return stress_; }      // row space
  const fem::LagrangeSpace& velocity() const { return velocity_; }

  int offset_strain() const { return 0; }
  int offset_stress(int row) const {
    return strain_.size() + row * stress_.size();
  }
  int offset_velocity(int comp) const {
    return strain_.size() + 2 * stress_.size() + comp * velocity_.size();
  }
  int multiplier_index() const {
    return strain_.size() + 2 * stress_.size() + 2 * velocity_.size();
  }
  int size() const { return multiplier_index() + 1; }

  AssembledSystem assemble(const FlowCoefficients& coef,
                           const FlowFields& fields,
                           const FlowOptions& opts = {}) const;

  // Solution evaluation on a coefficient vector laid out as above.
  Mat2 strain_value(const std::vector<double>& x, int t, double xi,
                    double eta) const;
  Mat2 stress_value(const std::vector<double>& x, int t, double xi,
                    double eta) const;
  Vec2 stress_divergence(const std::vector<double>& x, int t, double xi,
                         double eta) const;
  Vec2 velocity_value(const std::vector<double>& x, int t, double xi,
                      double eta) const;
  // Velocity gradient with rows (grad u_x, grad u_y).
  Mat2 velocity_gradient(const std::vector<double>& x, int t, double xi,
                         double eta) const;

  // Sample a solution vector as CellFields (the vector is copied so the
  // field stays valid independently of the caller's storage).
  CellField<Vec2> velocity_field(std::vector<double> x) const;

  int quadrature_degree(int extra = 0) const;

 private:
  const mesh::Mesh* mesh_;
  int k_;
  fem::StrainSpace strain_;
  fem::RTSpace stress_;
  fem::LagrangeSpace velocity_;
};

// ---------------------------------------------------------------------------
// Transport block
// ---------------------------------------------------------------------------

struct TransportCoefficients {
  Vec2 conductivity{1.0, 1.0};  // diagonal of K, one entry per component
  double inv_dt = 0.0;          // backward-Euler mass weight (0 = steady)
};

struct TransportFields {
  CellField<Vec2> advection;       // velocity w; empty = pure diffusion
  CellField<Vec2> source;          // volume source per component
  CellField<Vec2> previous;        // previous-step fields (scaled by inv_dt)
  CellField<Mat2> lagged_gradient; // rows grad(phi~) for the lagged variant
  std::function<Vec2(Vec2)> dirichlet;      // boundary data on Dirichlet tags
  std::function<Vec2(Vec2, Vec2)> neumann;  // flux data g_N(x, n) elsewhere
};

struct TransportOptions {
  std::function<bool(int)> dirichlet_tag;  // which edge tags are essential
  bool constrain_dirichlet = true;
  // Move the advection term to the right-hand side, evaluated with
  // fields.lagged_gradient (the strictly lagged fixed point; keeps the
  // matrix symmetric positive definite).
  bool lag_advection = false;
  int extra_quadrature = 0;
};

class TransportSystem {
 public:
  // Continuous elements of degree k+1, matching FlowSystem(mesh, k).
  TransportSystem(const mesh::Mesh& mesh, int k);

  const mesh::Mesh& mesh() const { return *mesh_; }
  const fem::LagrangeSpace& space() const { return space_; }

  int offset(int comp) const { return comp * space_.size(); }
  int size() const { return 2 * space_.size(); }

  AssembledSystem assemble(const TransportCoefficients& coef,
                           const TransportFields& fields,
                           const TransportOptions& opts) const;

  Vec2 value(const std::vector<double>& x, int t, double xi, double eta) const;
  // Rows are the gradients of the two components.
  Mat2 gradient(const std::vector<double>& x, int t, double xi,
                double eta) const;

  CellField<Vec2> value_field(std::vector<double> x) const;
  CellField<Mat2> gradient_field(std::vector<double> x) const;

  // Nodal interpolation of analytic data (initial conditions, references).
  std::vector<double> interpolate(const std::function<Vec2(Vec2)>& f) const;

  int quadrature_degree(int extra = 0) const;

 private:
  const mesh::Mesh* mesh_;
  int k_;
  fem::LagrangeSpace space_;
};

}  // namespace ddc::assembly
