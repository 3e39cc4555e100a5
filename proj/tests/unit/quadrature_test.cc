#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "ddc/quadrature.hpp"

using namespace ddc::quad;

namespace {

// Independent oracle: int_T x^a y^b over the unit reference triangle equals
// a! b! / (a + b + 2)!.
double exact_monomial_integral(int a, int b) {
  double v = 1.0;
  // a! b! / (a+b+2)! computed stably as a product of ratios.
  for (int i = 1; i <= a; ++i) v *= i;
  for (int i = 1; i <= b; ++i) v *= i;
  for (int i = 1; i <= a + b + 2; ++i) v /= i;
  return v;
}

}  // namespace

TEST_CASE("Triangle rules integrate monomials exactly to their degree",
          "[quadrature]") {
  for (int degree = 1; degree <= max_triangle_degree(); ++degree) {
    const TriangleRule rule = triangle_rule(degree);
    REQUIRE(rule.degree >= degree);
    for (int a = 0; a + 0 <= rule.degree; ++a) {
      for (int b = 0; a + b <= rule.degree; ++b) {
        double s = 0.0;
        for (int i = 0; i < rule.size; ++i)
          s += rule.points[i].w * std::pow(rule.points[i].x, a) *
               std::pow(rule.points[i].y, b);
        INFO("degree " << degree << " monomial x^" << a << " y^" << b);
        CHECK(s == Catch::Approx(exact_monomial_integral(a, b)).margin(1e-15));
      }
    }
  }
}

TEST_CASE("Triangle rule points are interior with positive weights",
          "[quadrature]") {
  for (int degree = 1; degree <= max_triangle_degree(); degree += 2) {
    const TriangleRule rule = triangle_rule(degree);
    double wsum = 0.0;
    for (int i = 0; i < rule.size; ++i) {
      const auto& p = rule.points[i];
      CHECK(p.w > 0.0);
      CHECK(p.x > 0.0);
      CHECK(p.y > 0.0);
      CHECK(p.x + p.y < 1.0);
      wsum += p.w;
    }
    CHECK(wsum == Catch::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("Line rules integrate monomials exactly to their degree",
          "[quadrature]") {
  for (int degree = 1; degree <= max_line_degree(); ++degree) {
    const LineRule rule = line_rule(degree);
    REQUIRE(rule.degree >= degree);
    for (int a = 0; a <= rule.degree; ++a) {
      double s = 0.0;
      for (int i = 0; i < rule.size; ++i)
        s += rule.points[i].w * std::pow(rule.points[i].t, a);
      CHECK(s == Catch::Approx(1.0 / (a + 1)).epsilon(1e-14));
    }
  }
}

TEST_CASE("Rule selection is tight and bounded", "[quadrature]") {
  CHECK(triangle_rule(1).size == 1);
  CHECK(triangle_rule(2).size == 4);
  CHECK(triangle_rule(3).size == 4);
  CHECK(triangle_rule(4).size == 9);
  CHECK(line_rule(1).size == 1);
  CHECK(line_rule(3).size == 2);
  CHECK_THROWS(triangle_rule(max_triangle_degree() + 1));
  CHECK_THROWS(line_rule(max_line_degree() + 1));
}
