// Reference-solution tests.  The frozen constants below were produced with
// an independent 30-digit symbolic computation of the same fields and their
// calculus; finite differences provide a second, derivative-only guard, and
// quadrature checks pin the gauge constants (zero-mean pressure, the
// velocity-dependent pressure shift).

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "ddc/mesh.hpp"
#include "ddc/mms.hpp"
#include "ddc/quadrature.hpp"
#include "ddc/types.hpp"

using ddc::Mat2;
using ddc::Vec2;
namespace mms = ddc::mms;

namespace {

bool close(double got, double want, double rel) {
  return std::abs(got - want) <= rel * std::max(1.0, std::abs(want));
}

void check_vec(Vec2 got, Vec2 want, double rel = 1e-12) {
  CAPTURE(got.x, got.y, want.x, want.y);
  CHECK(close(got.x, want.x, rel));
  CHECK(close(got.y, want.y, rel));
}

void check_mat(Mat2 got, Mat2 want, double rel = 1e-12) {
  CAPTURE(got.a00, got.a01, got.a10, got.a11, want.a00, want.a01, want.a10,
          want.a11);
  CHECK(close(got.a00, want.a00, rel));
  CHECK(close(got.a01, want.a01, rel));
  CHECK(close(got.a10, want.a10, rel));
  CHECK(close(got.a11, want.a11, rel));
}

// Central differences on scalar and matrix-valued callables.
template <typename F>
Vec2 fd_grad(const F& f, Vec2 p, double h = 1e-6) {
  return Vec2{(f({p.x + h, p.y}) - f({p.x - h, p.y})) / (2.0 * h),
              (f({p.x, p.y + h}) - f({p.x, p.y - h})) / (2.0 * h)};
}

template <typename F>
double fd_lap(const F& f, Vec2 p, double h = 2e-4) {
  return (f({p.x + h, p.y}) + f({p.x - h, p.y}) + f({p.x, p.y + h}) +
          f({p.x, p.y - h}) - 4.0 * f(p)) /
         (h * h);
}

}  // namespace

TEST_CASE("smooth square solution matches frozen reference values", "[mms]") {
  const mms::ExactSolution s = mms::smooth_square();

  ddc::assembly::FlowCoefficients fc;
  fc.gamma = 0.1;
  fc.alpha = {0.5, 1.5};
  fc.gravity = {0.0, -1.0};
  ddc::assembly::TransportCoefficients tc;
  tc.conductivity = {2.0, 2.0};

  SECTION("interior point (3/10, 7/10)") {
    const Vec2 q{0.3, 0.7};
    check_vec(s.u(q), {-0.53165675522002496, -0.53165675522002496});
    check_mat(s.grad_u(q), {2.17078713422706, 9.1956018652677863,
                            -9.1956018652677863, -2.17078713422706});
    CHECK(close(s.p(q), 0.022608231661941207, 1e-12));
    CHECK(close(s.nu(q), 0.63291139240506329, 1e-12));
    check_vec(s.phi(q), {0.21, 2.7182818284590452});
    check_mat(s.grad_phi(q), {0.7, 0.3, 2.7182818284590452,
                              2.7182818284590452});
    check_mat(mms::stress(s, q),
              {2.6300646784442643, -0.28265890537108553,
               -0.28265890537108553, -2.8655989525103178});
    check_vec(mms::stress_divergence(s, q),
              {82.125611438944201, 73.90726291403015});
    check_vec(mms::flow_source(s, fc, q),
              {-82.178777114466203, -69.778005846863585});
    check_vec(mms::transport_source(s, tc, q),
              {-0.53165675522002496, -13.763513107220366});
  }

  SECTION("interior point (5/8, 1/8)") {
    const Vec2 q{0.625, 0.125};
    check_vec(s.u(q), {-0.5, 0.5});
    check_mat(s.grad_u(q),
              {-6.2831853071795865, 0.0, 0.0, 6.2831853071795865});
    CHECK(close(s.p(q), 0.096562297108525608, 1e-12));
    CHECK(close(s.nu(q), 0.71111111111111111, 1e-12));
    check_vec(s.phi(q), {0.078125, 2.1170000166126747});
    check_mat(mms::stress(s, q), {-9.095148067319493, 0.25, 0.25,
                                  8.7770234731024418});
    check_vec(mms::stress_divergence(s, q),
              {61.529209662108742, -60.776206328226084});
    check_vec(mms::flow_source(s, fc, q),
              {-61.579209662108742, 64.040768853145096});
    check_vec(mms::transport_source(s, tc, q),
              {0.25, -8.4680000664506987});
  }

  SECTION("diffusive boundary flux") {
    check_vec(mms::transport_flux(s, tc, {0.0, 0.3}, {-1.0, 0.0}),
              {-0.6, -2.6997176151520062});
    check_vec(mms::transport_flux(s, tc, {1.0, 0.7}, {1.0, 0.0}),
              {1.4, 10.9478947834544});
  }
}

TEST_CASE("L-shape solution matches frozen reference values", "[mms]") {
  const mms::ExactSolution s = mms::singular_lshape();

  ddc::assembly::FlowCoefficients fc;
  fc.gamma = 1e-3;
  fc.alpha = {1.0, 0.5};
  fc.gravity = {0.0, -1.0};
  ddc::assembly::TransportCoefficients tc;
  tc.conductivity = {1.0, 2.0};

  SECTION("interior point (-1/2, 1/4)") {
    const Vec2 q{-0.5, 0.25};
    check_vec(s.u(q), {0.0625, -0.25});
    check_mat(s.grad_u(q), {0.0, 0.5, 1.0, 0.0});
    check_mat(mms::strain(s, q), {0.0, 0.75, 0.75, 0.0});
    CHECK(close(s.p(q), -0.14250147028486039, 1e-12));
    CHECK(close(s.nu(q), 1.7788007830714049, 1e-12));
    check_vec(s.phi(q), {0.73161562894664179, 1.1331484530668263});
    check_mat(s.grad_phi(q),
              {0.73161562894664179, -0.3658078144733209,
               -0.28328711326670658, 0.56657422653341316});
    check_mat(mms::stress(s, q),
              {0.33859522028486039, 2.6838261746071073, 2.6838261746071073,
               0.28000147028486039});
    check_vec(mms::stress_divergence(s, q),
              {4.4064462639014515, -2.8138227404150233});
    check_vec(mms::flow_source(s, fc, q),
              {-4.4063837639014515, 4.1117625958950783});
    check_vec(mms::transport_source(s, tc, q),
              {2.1491209100307603, -0.8675667843792889});
  }

  SECTION("interior point (3/4, -3/8)") {
    const Vec2 q{0.75, -0.375};
    check_vec(s.u(q), {0.140625, -0.5625});
    check_mat(s.grad_u(q), {0.0, -0.75, -1.5, 0.0});
    CHECK(close(s.p(q), 0.068117451688928671, 1e-12));
    CHECK(close(s.nu(q), 1.569782824730923, 1e-12));
    check_vec(s.phi(q), {0.49503589692619858, 1.3247847587288656});
    check_mat(mms::stress(s, q),
              {0.11210715768607133, -3.4529097931445768,
               -3.4529097931445768, -0.18452370168892867});
    check_vec(mms::stress_divergence(s, q),
              {2.085354061996946, -0.68944282226253083});
    check_vec(mms::flow_source(s, fc, q),
              {-2.085213436996946, 1.8463085985531622});
    check_vec(mms::transport_source(s, tc, q),
              {0.27459022407625078, -1.2342233006126345});
  }

  SECTION("diffusive boundary flux on the re-entrant edges") {
    check_vec(mms::transport_flux(s, tc, {0.5, 0.0}, {0.0, 1.0}),
              {0.0, -1.0});
    check_vec(mms::transport_flux(s, tc, {0.0, 0.5}, {1.0, 0.0}),
              {0.0, -1.0});
  }
}

TEST_CASE("hand-coded derivatives agree with finite differences", "[mms]") {
  struct Case {
    mms::ExactSolution s;
    std::vector<Vec2> points;
  };
  const std::vector<Case> cases = {
      {mms::smooth_square(), {{0.3, 0.7}, {0.625, 0.125}, {0.41, 0.23}}},
      {mms::singular_lshape(),
       {{-0.5, 0.25}, {0.75, -0.375}, {-0.3, -0.6}}}};

  for (const auto& c : cases) {
    const auto& s = c.s;
    for (const Vec2 q : c.points) {
      CAPTURE(q.x, q.y);

      const auto u1 = [&](Vec2 p) { return s.u(p).x; };
      const auto u2 = [&](Vec2 p) { return s.u(p).y; };
      const Vec2 g1 = fd_grad(u1, q), g2 = fd_grad(u2, q);
      check_mat(s.grad_u(q), {g1.x, g1.y, g2.x, g2.y}, 1e-7);
      check_vec(s.lap_u(q), {fd_lap(u1, q), fd_lap(u2, q)}, 1e-3);

      check_vec(s.grad_p(q), fd_grad([&](Vec2 p) { return s.p(p); }, q),
                1e-7);
      check_vec(s.grad_nu(q), fd_grad([&](Vec2 p) { return s.nu(p); }, q),
                1e-7);

      const auto phi1 = [&](Vec2 p) { return s.phi(p).x; };
      const auto phi2 = [&](Vec2 p) { return s.phi(p).y; };
      const Vec2 h1 = fd_grad(phi1, q), h2 = fd_grad(phi2, q);
      check_mat(s.grad_phi(q), {h1.x, h1.y, h2.x, h2.y}, 1e-7);
      check_vec(s.lap_phi(q), {fd_lap(phi1, q), fd_lap(phi2, q)}, 1e-3);

      // The composed pseudostress divergence against a finite difference of
      // the composed pseudostress itself.
      const double h = 1e-6;
      const Mat2 dx = (1.0 / (2.0 * h)) * (mms::stress(s, {q.x + h, q.y}) -
                                           mms::stress(s, {q.x - h, q.y}));
      const Mat2 dy = (1.0 / (2.0 * h)) * (mms::stress(s, {q.x, q.y + h}) -
                                           mms::stress(s, {q.x, q.y - h}));
      check_vec(mms::stress_divergence(s, q),
                {dx(0, 0) + dy(0, 1), dx(1, 0) + dy(1, 1)}, 1e-6);

      // Exact fields are divergence-free, so the strain is trace-free.
      CHECK(std::abs(trace(mms::strain(s, q))) < 1e-12);
    }
  }
}

TEST_CASE("gauge constants and mean-zero pressures", "[mms]") {
  const auto integrate = [](const ddc::mesh::Mesh& m, int degree,
                            const std::function<double(Vec2)>& f) {
    const auto rule = ddc::quad::triangle_rule(degree);
    double sum = 0.0;
    for (int t = 0; t < m.num_triangles(); ++t)
      for (int q = 0; q < rule.size; ++q)
        sum += rule.points[q].w * 2.0 * m.area(t) *
               f(m.map_to_physical(t, rule.points[q].x, rule.points[q].y));
    return sum;
  };

  SECTION("unit square fields") {
    const mms::ExactSolution s = mms::smooth_square();
    const auto m = ddc::mesh::Mesh::unit_square_crisscross(32);
    CHECK(std::abs(integrate(m, 9, s.p)) < 1e-10);
    const double l2 =
        integrate(m, 9, [&](Vec2 q) { return dot(s.u(q), s.u(q)); });
    CHECK(std::abs(l2 - 3.0 / 8.0) < 1e-9);
    CHECK(std::abs(s.c_u + 0.5 * l2) < 1e-9);
  }

  SECTION("L-shape fields") {
    const mms::ExactSolution s = mms::singular_lshape();
    const auto m = ddc::mesh::Mesh::l_shape_crisscross(16);
    // The pressure has a cube-root singularity at the corner; the composite
    // rule converges but not to machine precision.
    CHECK(std::abs(integrate(m, 9, s.p)) < 1e-5);
    const double l2 =
        integrate(m, 9, [&](Vec2 q) { return dot(s.u(q), s.u(q)); });
    CHECK(std::abs(l2 - 6.0 / 5.0) < 1e-12);
    CHECK(std::abs(s.c_u + l2 / 6.0) < 1e-12);  // |Omega| = 3
  }
}

TEST_CASE("transient startup fields", "[mms]") {
  const auto u0 = mms::transient_initial_velocity();
  const auto phi0 = mms::transient_initial_transport();

  // The startup velocity vanishes on the whole boundary.
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    CHECK(norm(u0({t, 0.0})) < 1e-14);
    CHECK(norm(u0({t, 1.0})) < 1e-14);
    CHECK(norm(u0({0.0, t})) < 1e-14);
    CHECK(norm(u0({1.0, t})) < 1e-14);
  }

  // ... and is divergence-free.
  for (const Vec2 q : {Vec2{0.3, 0.7}, Vec2{0.62, 0.18}}) {
    const double h = 1e-6;
    const double div = (u0({q.x + h, q.y}).x - u0({q.x - h, q.y}).x +
                        u0({q.x, q.y + h}).y - u0({q.x, q.y - h}).y) /
                       (2.0 * h);
    CHECK(std::abs(div) < 1e-8);
  }

  check_vec(phi0({0.3, 0.7}), {std::exp(1.0), std::exp(-0.4)}, 1e-14);
  check_vec(phi0({0.0, 0.0}), {1.0, 1.0}, 1e-14);
}
