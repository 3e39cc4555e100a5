#include "ddc/mms.hpp"

namespace ddc::mms {

Mat2 strain(const ExactSolution& s, Vec2 x) { return sym(s.grad_u(x)); }

Mat2 stress(const ExactSolution& s, Vec2 x) {
  const Vec2 u = s.u(x);
  return 2.0 * s.nu(x) * strain(s, x) - outer(u, u) -
         (s.p(x) + s.c_u) * identity2();
}

Vec2 stress_divergence(const ExactSolution& s, Vec2 x) {
  const Mat2 t = strain(s, x);
  const Vec2 u = s.u(x);
  // Rowwise: div(2 nu t) = nu lap u + 2 t grad(nu) (using tr t = div u = 0),
  // div(u (x) u) = (grad u) u, div((p + c) I) = grad p.
  return s.nu(x) * s.lap_u(x) + 2.0 * (t * s.grad_nu(x)) -
         s.grad_u(x) * u - s.grad_p(x);
}

Vec2 flow_source(const ExactSolution& s, const assembly::FlowCoefficients& c,
                 Vec2 x) {
  return c.gamma * s.u(x) - stress_divergence(s, x) -
         dot(c.alpha, s.phi(x)) * c.gravity;
}

Vec2 transport_source(const ExactSolution& s,
                      const assembly::TransportCoefficients& c, Vec2 x) {
  const Mat2 g = s.grad_phi(x);
  const Vec2 lap = s.lap_phi(x);
  const Vec2 u = s.u(x);
  return Vec2{-c.conductivity.x * lap.x + dot(Vec2{g(0, 0), g(0, 1)}, u),
              -c.conductivity.y * lap.y + dot(Vec2{g(1, 0), g(1, 1)}, u)};
}

Vec2 transport_flux(const ExactSolution& s,
                    const assembly::TransportCoefficients& c, Vec2 x,
                    Vec2 n) {
  const Mat2 g = s.grad_phi(x);
  return Vec2{c.conductivity.x * dot(Vec2{g(0, 0), g(0, 1)}, n),
              c.conductivity.y * dot(Vec2{g(1, 0), g(1, 1)}, n)};
}

}  // namespace ddc::mms
