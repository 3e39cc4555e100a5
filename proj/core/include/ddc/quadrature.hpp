#pragma once

// Quadrature rules on the reference triangle {x >= 0, y >= 0, x + y <= 1}
// and on the unit interval.  The triangle rules are collapsed tensor-product
// Gauss rules (Gauss-Legendre x Gauss-Jacobi(1,0)), so all weights are
// positive and every point is strictly interior.  Tables are precomputed;
// rules are selected by the polynomial degree they must integrate exactly.

namespace ddc::quad {

struct TriQuadPoint {
  double x;
  double y;
  double w;
};

struct LineQuadPoint {
  double t;  // parameter in [0, 1]
  double w;
};

struct TriangleRule {
  const TriQuadPoint* points;
  int size;
  int degree;  // highest total polynomial degree integrated exactly
};

struct LineRule {
  const LineQuadPoint* points;
  int size;
  int degree;
};

// Smallest stored rule exact for polynomials of total degree `degree`.
// Throws std::out_of_range above the largest stored rule (degree 13 on the
// triangle, 15 on the line).
TriangleRule triangle_rule(int degree);
LineRule line_rule(int degree);

int max_triangle_degree();
int max_line_degree();

}  // namespace ddc::quad
