#include <algorithm>
#include <stdexcept>
#include <utility>

#include "ddc/verify.hpp"

namespace ddc::verify {

NestedEvaluator::NestedEvaluator(std::vector<const mesh::Mesh*> chain)
    : chain_(std::move(chain)) {
  if (chain_.empty()) {
    throw std::invalid_argument("NestedEvaluator: empty mesh chain");
  }
  for (const mesh::Mesh* m : chain_) {
    if (m == nullptr) {
      throw std::invalid_argument("NestedEvaluator: null mesh in chain");
    }
  }
  children_.resize(chain_.size() - 1);
  for (std::size_t level = 0; level + 1 < chain_.size(); ++level) {
    const mesh::Mesh& coarse = *chain_[level];
    const mesh::Mesh& fine = *chain_[level + 1];
    if (fine.num_triangles() != 4 * coarse.num_triangles()) {
      throw std::invalid_argument(
          "NestedEvaluator: chain entries are not successive refinements");
    }
    auto& table = children_[level];
    table.assign(coarse.num_triangles(), {-1, -1, -1, -1});
    std::vector<int> count(coarse.num_triangles(), 0);
    for (int t = 0; t < fine.num_triangles(); ++t) {
      const int p = fine.triangle(t).parent;
      if (p < 0 || p >= coarse.num_triangles() || count[p] == 4) {
        throw std::invalid_argument(
            "NestedEvaluator: refinement parent links do not match the chain");
      }
      table[p][count[p]++] = t;
    }
  }
}

NestedEvaluator::Location NestedEvaluator::locate(int t, double xi,
                                                  double eta) const {
  Location loc{t, xi, eta};
  for (std::size_t level = 0; level + 1 < chain_.size(); ++level) {
    const Vec2 x = chain_[level]->map_to_physical(loc.tri, loc.xi, loc.eta);
    const mesh::Mesh& fine = *chain_[level + 1];

    // The point lies in exactly one child up to roundoff; pick the child
    // whose reference coordinates are deepest inside the unit triangle.
    int best = -1;
    double best_margin = -1e300;
    Vec2 best_ref{0.0, 0.0};
    for (const int c : children_[level][loc.tri]) {
      const Vec2 v0 = fine.vertex(fine.triangle(c).v[0]);
      const Vec2 ref = inverse(fine.jacobian(c)) * (x - v0);
      const double margin =
          std::min({ref.x, ref.y, 1.0 - ref.x - ref.y});
      if (margin > best_margin) {
        best_margin = margin;
        best = c;
        best_ref = ref;
      }
    }
    loc.tri = best;
    loc.xi = std::max(0.0, best_ref.x);
    loc.eta = std::max(0.0, best_ref.y);
  }
  return loc;
}

}  // namespace ddc::verify
