#pragma once

// Finite element spaces on triangle meshes:
//
//  * LagrangeSpace  - continuous scalar P1/P2/P3 (velocity and transport
//                     components),
//  * RTSpace        - H(div)-conforming Raviart-Thomas space of order k
//                     (each row of the pseudostress),
//  * StrainSpace    - elementwise polynomials of degree k spanning symmetric
//                     trace-free 2x2 tensors (the strain unknown).
//
// RT and strain bases are built per physical triangle in locally scaled
// coordinates; RT shape functions are dual to globally oriented edge-flux
// moments and interior moments, which makes normal traces match across
// element boundaries without any Piola bookkeeping.

#include <functional>
#include <span>
#include <vector>

#include "ddc/mesh.hpp"
#include "ddc/types.hpp"

namespace ddc::fem {

// ---------------------------------------------------------------------------
// Continuous scalar Lagrange space, degree 1..3.
//
// Global dof order: vertex dofs, then (degree-1) dofs per edge laid out along
// the global a -> b edge direction, then interior dofs (degree 3 only).
// ---------------------------------------------------------------------------
class LagrangeSpace {
 public:
  LagrangeSpace(const mesh::Mesh& mesh, int degree);

  const mesh::Mesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int size() const { return n_dofs_; }
  int dofs_per_cell() const { return n_cell_dofs_; }

  int cell_dof(int t, int local) const;
  // Physical coordinates of a global dof's node (nodal interpolation).
  Vec2 dof_point(int dof) const;

  // Shape function values / physical gradients at a reference point.  Output
  // spans must hold dofs_per_cell() entries.
  void shape_values(double xi, double eta, std::span<double> values) const;
  void shape_gradients(int t, double xi, double eta,
                       std::span<Vec2> gradients) const;

  // Global dofs on the closure of boundary edges whose tag satisfies `keep`.
  std::vector<int> boundary_dofs(const std::function<bool(int)>& keep) const;

  // Evaluate a coefficient vector (starting at `offset`) at a point.
  double value(const std::vector<double>& coeffs, int offset, int t, double xi,
               double eta) const;
  Vec2 gradient(const std::vector<double>& coeffs, int offset, int t,
                double xi, double eta) const;

 private:
  const mesh::Mesh* mesh_;
  int degree_;
  int n_cell_dofs_;
  int n_dofs_;
};

// ---------------------------------------------------------------------------
// Raviart-Thomas space of order k (vector-valued, H(div)-conforming).
//
// Local dof order: edges 0,1,2 with k+1 flux moments each (constant, then
// rising Legendre order along the global edge direction), then k(k+1)
// interior moments.  Global order: (k+1) dofs per edge, then interior dofs.
// ---------------------------------------------------------------------------
class RTSpace {
 public:
  RTSpace(const mesh::Mesh& mesh, int order);

  const mesh::Mesh& mesh() const { return *mesh_; }
  int order() const { return order_; }
  int size() const { return n_dofs_; }
  int dofs_per_cell() const { return n_cell_dofs_; }

  int cell_dof(int t, int local) const;

  void shape_values(int t, double xi, double eta,
                    std::span<Vec2> values) const;
  void shape_divergences(int t, double xi, double eta,
                         std::span<double> divergences) const;

  // Canonical interpolation: matches all edge and interior moments of `f`.
  std::vector<double> interpolate(
      const std::function<Vec2(Vec2)>& f) const;

  Vec2 value(const std::vector<double>& coeffs, int offset, int t, double xi,
             double eta) const;
  double divergence(const std::vector<double>& coeffs, int offset, int t,
                    double xi, double eta) const;

 private:
  // Monomial layout of RT_k in scaled local coordinates.
  struct Monomial {
    int type;  // 0: (z^a e^b, 0); 1: (0, z^a e^b); 2: (z, e) z^a e^b, a+b = k
    int a;
    int b;
  };
  Vec2 monomial_value(const Monomial& m, Vec2 z) const;
  double monomial_divergence(const Monomial& m, Vec2 z, double inv_h) const;
  Vec2 scaled_coords(int t, Vec2 x) const;
  double edge_moment(int t, int lv, int q,
                     const std::function<Vec2(Vec2)>& f) const;
  double interior_moment(int t, int m,
                         const std::function<Vec2(Vec2)>& f) const;

  const mesh::Mesh* mesh_;
  int order_;
  int n_cell_dofs_;
  int n_dofs_;
  std::vector<Monomial> monomials_;
  // Per triangle: scale/centroid and the dofs_per_cell^2 coefficient matrix
  // (column i = monomial coefficients of shape function i).
  std::vector<double> scale_;
  std::vector<Vec2> centroid_;
  std::vector<double> coeffs_;
};

// ---------------------------------------------------------------------------
// Elementwise symmetric trace-free tensor space of degree k.
//
// Shape function 2m   : p_m(z) * E1,  E1 = [1 0; 0 -1]
// Shape function 2m+1 : p_m(z) * E2,  E2 = [0 1; 1  0]
// with p_m the m-th scalar monomial of degree <= k in scaled coordinates.
// ---------------------------------------------------------------------------
class StrainSpace {
 public:
  StrainSpace(const mesh::Mesh& mesh, int order);

  const mesh::Mesh& mesh() const { return *mesh_; }
  int order() const { return order_; }
  int size() const { return n_dofs_; }
  int dofs_per_cell() const { return n_cell_dofs_; }

  int cell_dof(int t, int local) const { return t * n_cell_dofs_ + local; }

  void shape_values(int t, double xi, double eta,
                    std::span<Mat2> values) const;

  Mat2 value(const std::vector<double>& coeffs, int offset, int t, double xi,
             double eta) const;

 private:
  const mesh::Mesh* mesh_;
  int order_;
  int n_cell_dofs_;
  int n_dofs_;
  std::vector<double> scale_;
  std::vector<Vec2> centroid_;
};

// Shifted Legendre polynomials on [0,1], used for edge flux moments.
double shifted_legendre(int q, double s);

}  // namespace ddc::fem
