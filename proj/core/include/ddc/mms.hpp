#pragma once

// Closed-form reference solutions used by the verification drivers.  Each
// bundle carries the primitive fields together with the hand-coded
// derivatives needed to manufacture volume sources and boundary data; the
// derived quantities (strain, pseudostress and its divergence, loads,
// diffusive fluxes) are composed here so that every consumer shares a single
// definition.
//
// Conventions: grad_u / grad_phi rows are the gradients of the components;
// lap_* are componentwise Laplacians; p has zero mean over its domain; c_u
// is the pressure-gauge constant -(1/(2|Omega|)) ||u||_0^2 of the exact
// velocity.

#include <functional>

#include "ddc/assembly.hpp"
#include "ddc/types.hpp"

namespace ddc::mms {

struct ExactSolution {
  std::function<Vec2(Vec2)> u;
  std::function<Mat2(Vec2)> grad_u;
  std::function<Vec2(Vec2)> lap_u;
  std::function<double(Vec2)> p;
  std::function<Vec2(Vec2)> grad_p;
  std::function<Vec2(Vec2)> phi;
  std::function<Mat2(Vec2)> grad_phi;
  std::function<Vec2(Vec2)> lap_phi;
  std::function<double(Vec2)> nu;
  std::function<Vec2(Vec2)> grad_nu;
  double c_u = 0.0;
};

// Smooth trigonometric/exponential solution on the unit square with the
// rational viscosity 1/(|x|^2 + 1).
ExactSolution smooth_square();

// Solution on the L-shaped domain (-1,1)^2 \ [0,1]^2 whose pressure
// (|x|^2)^(1/3) - p0 has limited regularity at the re-entrant corner; the
// viscosity is 1 + exp(-x_1^2).
ExactSolution singular_lshape();

// Startup fields of the transient benchmark on the unit square (velocity
// vanishing on the boundary, exponential transported fields).
std::function<Vec2(Vec2)> transient_initial_velocity();
std::function<Vec2(Vec2)> transient_initial_transport();

// ---------------------------------------------------------------------------
// Derived fields
// ---------------------------------------------------------------------------

// Strain rate t = sym(grad u) (trace-free for the divergence-free fields
// above).
Mat2 strain(const ExactSolution& s, Vec2 x);

// Pseudostress sigma = 2 nu t - u (x) u - (p + c_u) I.
Mat2 stress(const ExactSolution& s, Vec2 x);

// div sigma = nu lap u + 2 t grad(nu) - (grad u) u - grad p, rowwise.
Vec2 stress_divergence(const ExactSolution& s, Vec2 x);

// Momentum load f_u = gamma u - div sigma - (alpha . phi) g.
Vec2 flow_source(const ExactSolution& s, const assembly::FlowCoefficients& c,
                 Vec2 x);

// Transport load f_c = -K_c lap phi_c + grad(phi_c) . u, componentwise.
Vec2 transport_source(const ExactSolution& s,
                      const assembly::TransportCoefficients& c, Vec2 x);

// Diffusive boundary flux (K grad phi) n, componentwise.
Vec2 transport_flux(const ExactSolution& s,
                    const assembly::TransportCoefficients& c, Vec2 x, Vec2 n);

}  // namespace ddc::mms
