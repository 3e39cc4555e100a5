#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ddc/linalg.hpp"

namespace ddc::linalg {

// LU with partial pivoting on a dense copy of the matrix.  Cubic cost: only
// for small systems (coarse meshes) and for cross-checking iterative solves.
std::vector<double> dense_lu_solve(const CsrMatrix& a,
                                   const std::vector<double>& b) {
  const int n = a.rows();
  assert(a.cols() == n);
  assert(static_cast<int>(b.size()) == n);

  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  const auto& row_ptr = a.row_ptr();
  const auto& col_idx = a.col_idx();
  const auto& values = a.values();
  for (int i = 0; i < n; ++i)
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
      m[static_cast<std::size_t>(i) * n + col_idx[k]] = values[k];

  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;

  for (int col = 0; col < n; ++col) {
    int pivot_row = col;
    double pivot_mag = std::abs(m[static_cast<std::size_t>(col) * n + col]);
    for (int r = col + 1; r < n; ++r) {
      const double mag = std::abs(m[static_cast<std::size_t>(r) * n + col]);
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = r;
      }
    }
    if (pivot_mag < 1e-300)
      throw std::runtime_error("dense_lu_solve: numerically singular matrix");
    if (pivot_row != col) {
      for (int c = 0; c < n; ++c)
        std::swap(m[static_cast<std::size_t>(col) * n + c],
                  m[static_cast<std::size_t>(pivot_row) * n + c]);
      std::swap(perm[col], perm[pivot_row]);
    }
    const double inv_pivot = 1.0 / m[static_cast<std::size_t>(col) * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double factor =
          m[static_cast<std::size_t>(r) * n + col] * inv_pivot;
      m[static_cast<std::size_t>(r) * n + col] = factor;
      if (factor == 0.0) continue;
      const double* src = &m[static_cast<std::size_t>(col) * n];
      double* dst = &m[static_cast<std::size_t>(r) * n];
      for (int c = col + 1; c < n; ++c) dst[c] -= factor * src[c];
    }
  }

  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[perm[i]];
  // Forward substitution (unit lower factor).
  for (int i = 1; i < n; ++i) {
    double s = x[i];
    const double* row = &m[static_cast<std::size_t>(i) * n];
    for (int j = 0; j < i; ++j) s -= row[j] * x[j];
    x[i] = s;
  }
  // Back substitution.
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    const double* row = &m[static_cast<std::size_t>(i) * n];
    for (int j = i + 1; j < n; ++j) s -= row[j] * x[j];
    x[i] = s / row[i];
  }
  return x;
}

}  // namespace ddc::linalg
