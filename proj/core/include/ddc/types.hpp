#pragma once

// Small fixed-size vector/tensor types used throughout the solver.  All
// fields are 2D (the discretization is specific to planar domains).

#include <array>
#include <cmath>

namespace ddc {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr double operator[](int i) const { return i == 0 ? x : y; }
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
// Counterclockwise 90-degree rotation; maps a unit tangent to a unit normal.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

// 2x2 matrix, row-major.
struct Mat2 {
  double a00 = 0.0, a01 = 0.0;
  double a10 = 0.0, a11 = 0.0;

  constexpr double operator()(int i, int j) const {
    return i == 0 ? (j == 0 ? a00 : a01) : (j == 0 ? a10 : a11);
  }
};

constexpr Mat2 operator+(Mat2 a, Mat2 b) {
  return {a.a00 + b.a00, a.a01 + b.a01, a.a10 + b.a10, a.a11 + b.a11};
}
constexpr Mat2 operator-(Mat2 a, Mat2 b) {
  return {a.a00 - b.a00, a.a01 - b.a01, a.a10 - b.a10, a.a11 - b.a11};
}
constexpr Mat2 operator*(double s, Mat2 a) {
  return {s * a.a00, s * a.a01, s * a.a10, s * a.a11};
}
constexpr Vec2 operator*(Mat2 a, Vec2 v) {
  return {a.a00 * v.x + a.a01 * v.y, a.a10 * v.x + a.a11 * v.y};
}
constexpr double trace(Mat2 a) { return a.a00 + a.a11; }
constexpr double det(Mat2 a) { return a.a00 * a.a11 - a.a01 * a.a10; }
// Frobenius inner product a : b.
constexpr double ddot(Mat2 a, Mat2 b) {
  return a.a00 * b.a00 + a.a01 * b.a01 + a.a10 * b.a10 + a.a11 * b.a11;
}
// Deviatoric (trace-free) part: a - (tr a / 2) I.
constexpr Mat2 dev(Mat2 a) {
  const double m = 0.5 * trace(a);
  return {a.a00 - m, a.a01, a.a10, a.a11 - m};
}
constexpr Mat2 sym(Mat2 a) {
  return {a.a00, 0.5 * (a.a01 + a.a10), 0.5 * (a.a01 + a.a10), a.a11};
}
constexpr Mat2 skew(Mat2 a) {
  return {0.0, 0.5 * (a.a01 - a.a10), 0.5 * (a.a10 - a.a01), 0.0};
}
constexpr Mat2 outer(Vec2 a, Vec2 b) {
  return {a.x * b.x, a.x * b.y, a.y * b.x, a.y * b.y};
}
constexpr Mat2 identity2() { return {1.0, 0.0, 0.0, 1.0}; }

inline Mat2 inverse(Mat2 a) {
  const double d = det(a);
  const double inv = 1.0 / d;
  return {inv * a.a11, -inv * a.a01, -inv * a.a10, inv * a.a00};
}

}  // namespace ddc
