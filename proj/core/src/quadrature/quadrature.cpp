#include "ddc/quadrature.hpp"

#include <stdexcept>
#include <string>

namespace ddc::quad {

namespace {
#include "quad_tables.inc"
}  // namespace

TriangleRule triangle_rule(int degree) {
  constexpr int n_rules = sizeof(kTriRuleSizes) / sizeof(kTriRuleSizes[0]);
  for (int m = 0; m < n_rules; ++m) {
    if (kTriRuleDegrees[m] >= degree)
      return {kTriRules[m], kTriRuleSizes[m], kTriRuleDegrees[m]};
  }
  throw std::out_of_range("triangle_rule: no stored rule reaches degree " +
                          std::to_string(degree));
}

LineRule line_rule(int degree) {
  constexpr int n_rules = sizeof(kLineRuleSizes) / sizeof(kLineRuleSizes[0]);
  for (int m = 0; m < n_rules; ++m) {
    if (kLineRuleDegrees[m] >= degree)
      return {kLineRules[m], kLineRuleSizes[m], kLineRuleDegrees[m]};
  }
  throw std::out_of_range("line_rule: no stored rule reaches degree " +
                          std::to_string(degree));
}

int max_triangle_degree() {
  constexpr int n_rules = sizeof(kTriRuleDegrees) / sizeof(kTriRuleDegrees[0]);
  return kTriRuleDegrees[n_rules - 1];
}

int max_line_degree() {
  constexpr int n_rules = sizeof(kLineRuleDegrees) / sizeof(kLineRuleDegrees[0]);
  return kLineRuleDegrees[n_rules - 1];
}

}  // namespace ddc::quad
