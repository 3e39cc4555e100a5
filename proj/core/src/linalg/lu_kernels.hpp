// Shared kernels for incomplete/complete LU on a fixed CSR pattern: the
// in-place IKJ elimination and the paired triangular solves.  Running the
// elimination on a pattern that contains the complete symbolic fill makes it
// an exact LU factorization; on the bare matrix pattern it is ILU(0).
#pragma once

#include <cmath>
#include <vector>

namespace ddc::linalg::detail {

// Factors values in place (unit lower factor below each diagonal, upper
// factor including the pivot on and above it).  diag_pos receives the
// position of each diagonal entry, or -1 when the pattern has none.
// Vanishing pivots are passed through as 1 so a structurally singular
// diagonal (e.g. a multiplier bordering row under ILU(0)) does not abort
// the factorization; callers certify the result through residuals.
inline void lu_factor_inplace(const std::vector<int>& row_ptr,
                              const std::vector<int>& col_idx,
                              std::vector<double>& values,
                              std::vector<int>& diag_pos) {
  const int n = static_cast<int>(row_ptr.size()) - 1;
  diag_pos.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      if (col_idx[k] == i) {
        diag_pos[i] = k;
        break;
      }
    }
  }

  // Column-position lookup scratch, reset per row: pos_of_col[j] = position
  // of column j in the current row, or -1.
  std::vector<int> pos_of_col(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
      pos_of_col[col_idx[k]] = k;

    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      const int j = col_idx[k];
      if (j >= i) break;  // columns are sorted; lower part exhausted
      const int dj = diag_pos[j];
      const double pivot = dj >= 0 ? values[dj] : 1.0;
      const double factor =
          std::abs(pivot) > 1e-300 ? values[k] / pivot : values[k];
      values[k] = factor;
      if (factor == 0.0) continue;
      // Subtract factor * row(j)'s upper part wherever row(i) has the slot.
      for (int m = (dj >= 0 ? dj + 1 : row_ptr[j]); m < row_ptr[j + 1]; ++m) {
        const int col = col_idx[m];
        if (dj < 0 && col <= j) continue;
        const int pos = pos_of_col[col];
        if (pos >= 0) values[pos] -= factor * values[m];
      }
    }

    // Guard structurally/numerically vanishing pivots by passing them
    // through as 1.
    if (diag_pos[i] >= 0 && std::abs(values[diag_pos[i]]) < 1e-300)
      values[diag_pos[i]] = 1.0;

    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
      pos_of_col[col_idx[k]] = -1;
  }
}

// z = U^{-1} L^{-1} r for a factor produced by lu_factor_inplace.
inline void lu_solve(const std::vector<int>& row_ptr,
                     const std::vector<int>& col_idx,
                     const std::vector<double>& values,
                     const std::vector<int>& diag_pos,
                     const std::vector<double>& r, std::vector<double>& z) {
  const int n = static_cast<int>(row_ptr.size()) - 1;
  z.assign(r.begin(), r.end());
  // Forward solve with the unit lower factor.
  for (int i = 0; i < n; ++i) {
    double s = z[i];
    const int end = diag_pos[i] >= 0 ? diag_pos[i] : row_ptr[i + 1];
    for (int k = row_ptr[i]; k < end; ++k) {
      const int j = col_idx[k];
      if (j >= i) break;
      s -= values[k] * z[j];
    }
    z[i] = s;
  }
  // Backward solve with the upper factor.
  for (int i = n - 1; i >= 0; --i) {
    double s = z[i];
    double pivot = 1.0;
    const int begin = diag_pos[i] >= 0 ? diag_pos[i] : row_ptr[i];
    for (int k = row_ptr[i + 1] - 1; k >= begin; --k) {
      const int j = col_idx[k];
      if (j < i) break;
      if (j == i) {
        pivot = values[k];
        break;
      }
      s -= values[k] * z[j];
    }
    z[i] = std::abs(pivot) > 1e-300 ? s / pivot : s;
  }
}

}  // namespace ddc::linalg::detail
