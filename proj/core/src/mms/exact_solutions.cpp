#include <cmath>
#include <numbers>

#include "ddc/mms.hpp"

namespace ddc::mms {

namespace {
constexpr double kPi = std::numbers::pi;

// Zero-mean shift of (x^2 + y^2)^(1/3) over the L-shaped domain
// (-1,1)^2 \ [0,1]^2: (1/3) integral = (3/4) int_0^{pi/4} sec(t)^(8/3) dt,
// by symmetry of the three unit blocks.
constexpr double kLshapePressureShift = 0.8211058744335870284;
}  // namespace

ExactSolution smooth_square() {
  ExactSolution s;

  s.u = [](Vec2 q) {
    const double s2x = std::sin(2.0 * kPi * q.x);
    const double s2y = std::sin(2.0 * kPi * q.y);
    const double s4x = std::sin(4.0 * kPi * q.x);
    const double s4y = std::sin(4.0 * kPi * q.y);
    return Vec2{-s2x * s2x * s4y, s4x * s2y * s2y};
  };
  s.grad_u = [](Vec2 q) {
    const double s2x = std::sin(2.0 * kPi * q.x);
    const double s2y = std::sin(2.0 * kPi * q.y);
    const double s4x = std::sin(4.0 * kPi * q.x);
    const double s4y = std::sin(4.0 * kPi * q.y);
    const double c4x = std::cos(4.0 * kPi * q.x);
    const double c4y = std::cos(4.0 * kPi * q.y);
    return Mat2{-2.0 * kPi * s4x * s4y, -4.0 * kPi * s2x * s2x * c4y,
                4.0 * kPi * c4x * s2y * s2y, 2.0 * kPi * s4x * s4y};
  };
  s.lap_u = [](Vec2 q) {
    const double s2x = std::sin(2.0 * kPi * q.x);
    const double s2y = std::sin(2.0 * kPi * q.y);
    const double s4x = std::sin(4.0 * kPi * q.x);
    const double s4y = std::sin(4.0 * kPi * q.y);
    const double c4x = std::cos(4.0 * kPi * q.x);
    const double c4y = std::cos(4.0 * kPi * q.y);
    const double pi2 = kPi * kPi;
    return Vec2{8.0 * pi2 * s4y * (2.0 * s2x * s2x - c4x),
                8.0 * pi2 * s4x * (c4y - 2.0 * s2y * s2y)};
  };

  const double shift = std::sin(1.0) * std::sin(1.0);
  s.p = [shift](Vec2 q) { return std::cos(q.x) * std::cos(q.y) - shift; };
  s.grad_p = [](Vec2 q) {
    return Vec2{-std::sin(q.x) * std::cos(q.y),
                -std::cos(q.x) * std::sin(q.y)};
  };

  s.phi = [](Vec2 q) { return Vec2{q.x * q.y, std::exp(q.x + q.y)}; };
  s.grad_phi = [](Vec2 q) {
    const double e = std::exp(q.x + q.y);
    return Mat2{q.y, q.x, e, e};
  };
  s.lap_phi = [](Vec2 q) { return Vec2{0.0, 2.0 * std::exp(q.x + q.y)}; };

  s.nu = [](Vec2 q) { return 1.0 / (q.x * q.x + q.y * q.y + 1.0); };
  s.grad_nu = [](Vec2 q) {
    const double d = q.x * q.x + q.y * q.y + 1.0;
    return Vec2{-2.0 * q.x / (d * d), -2.0 * q.y / (d * d)};
  };

  s.c_u = -3.0 / 16.0;
  return s;
}

ExactSolution singular_lshape() {
  ExactSolution s;

  s.u = [](Vec2 q) { return Vec2{q.y * q.y, -q.x * q.x}; };
  s.grad_u = [](Vec2 q) { return Mat2{0.0, 2.0 * q.y, -2.0 * q.x, 0.0}; };
  s.lap_u = [](Vec2) { return Vec2{2.0, -2.0}; };

  s.p = [](Vec2 q) {
    return std::cbrt(q.x * q.x + q.y * q.y) - kLshapePressureShift;
  };
  s.grad_p = [](Vec2 q) {
    const double r2 = q.x * q.x + q.y * q.y;
    const double f = 2.0 / (3.0 * std::cbrt(r2 * r2));
    return Vec2{f * q.x, f * q.y};
  };

  s.phi = [](Vec2 q) {
    return Vec2{std::exp(-q.x * q.x - q.y * q.y), std::exp(-q.x * q.y)};
  };
  s.grad_phi = [](Vec2 q) {
    const double e1 = std::exp(-q.x * q.x - q.y * q.y);
    const double e2 = std::exp(-q.x * q.y);
    return Mat2{-2.0 * q.x * e1, -2.0 * q.y * e1, -q.y * e2, -q.x * e2};
  };
  s.lap_phi = [](Vec2 q) {
    const double r2 = q.x * q.x + q.y * q.y;
    return Vec2{(4.0 * r2 - 4.0) * std::exp(-r2),
                r2 * std::exp(-q.x * q.y)};
  };

  s.nu = [](Vec2 q) { return 1.0 + std::exp(-q.x * q.x); };
  s.grad_nu = [](Vec2 q) {
    return Vec2{-2.0 * q.x * std::exp(-q.x * q.x), 0.0};
  };

  s.c_u = -1.0 / 5.0;
  return s;
}

std::function<Vec2(Vec2)> transient_initial_velocity() {
  return [](Vec2 q) {
    const double spx = std::sin(kPi * q.x);
    const double spy = std::sin(kPi * q.y);
    return Vec2{spx * spx * std::sin(2.0 * kPi * q.y),
                -std::sin(2.0 * kPi * q.x) * spy * spy};
  };
}

std::function<Vec2(Vec2)> transient_initial_transport() {
  return [](Vec2 q) {
    return Vec2{std::exp(q.x + q.y), std::exp(q.x - q.y)};
  };
}

}  // namespace ddc::mms
