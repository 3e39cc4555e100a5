#include "ddc/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ddc::linalg {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

CsrMatrix CsrMatrix::from_triplets(int n_rows, int n_cols,
                                   std::vector<Triplet> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });

  CsrMatrix m;
  m.n_rows_ = n_rows;
  m.n_cols_ = n_cols;
  m.row_ptr_.assign(n_rows + 1, 0);
  m.col_idx_.reserve(entries.size());
  m.values_.reserve(entries.size());

  std::size_t i = 0;
  for (int row = 0; row < n_rows; ++row) {
    while (i < entries.size() && entries[i].row == row) {
      const int col = entries[i].col;
      assert(col >= 0 && col < n_cols);
      double v = 0.0;
      while (i < entries.size() && entries[i].row == row &&
             entries[i].col == col) {
        v += entries[i].value;
        ++i;
      }
      m.col_idx_.push_back(col);
      m.values_.push_back(v);
    }
    m.row_ptr_[row + 1] = static_cast<int>(m.col_idx_.size());
  }
  assert(i == entries.size() && "triplet with row index out of range");
  return m;
}

CsrMatrix CsrMatrix::from_raw(int n_rows, int n_cols, std::vector<int> row_ptr,
                              std::vector<int> col_idx,
                              std::vector<double> values) {
  assert(static_cast<int>(row_ptr.size()) == n_rows + 1);
  assert(row_ptr.front() == 0 &&
         row_ptr.back() == static_cast<int>(col_idx.size()));
  assert(col_idx.size() == values.size());
#ifndef NDEBUG
  for (int row = 0; row < n_rows; ++row) {
    for (int k = row_ptr[row]; k < row_ptr[row + 1]; ++k) {
      assert(col_idx[k] >= 0 && col_idx[k] < n_cols);
      assert(k == row_ptr[row] || col_idx[k - 1] < col_idx[k]);
    }
  }
#endif
  CsrMatrix m;
  m.n_rows_ = n_rows;
  m.n_cols_ = n_cols;
  m.row_ptr_ = std::move(row_ptr);
  m.col_idx_ = std::move(col_idx);
  m.values_ = std::move(values);
  return m;
}

void CsrMatrix::apply(const std::vector<double>& x,
                      std::vector<double>& y) const {
  assert(static_cast<int>(x.size()) == n_cols_);
  y.assign(n_rows_, 0.0);
  for (int row = 0; row < n_rows_; ++row) {
    double s = 0.0;
    for (int k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k)
      s += values_[k] * x[col_idx_[k]];
    y[row] = s;
  }
}

std::vector<double> CsrMatrix::apply(const std::vector<double>& x) const {
  std::vector<double> y;
  apply(x, y);
  return y;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(n_rows_, 0.0);
  for (int row = 0; row < n_rows_ && row < n_cols_; ++row) {
    for (int k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k) {
      if (col_idx_[k] == row) {
        d[row] = values_[k];
        break;
      }
    }
  }
  return d;
}

void CsrMatrix::write_matrix_market(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << n_rows_ << ' ' << n_cols_ << ' ' << nonzeros() << '\n';
  out.precision(17);
  for (int row = 0; row < n_rows_; ++row)
    for (int k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k)
      out << row + 1 << ' ' << col_idx_[k] + 1 << ' ' << values_[k] << '\n';
}

double relative_residual(const CsrMatrix& a, const std::vector<double>& x,
                         const std::vector<double>& b) {
  std::vector<double> r = a.apply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  const double nb = norm2(b);
  return nb > 0.0 ? norm2(r) / nb : norm2(r);
}

SystemBuilder::SystemBuilder(int n)
    : n_(n), rhs_(n, 0.0), constrained_(n, 0), value_(n, 0.0) {}

void SystemBuilder::constrain(int dof, double value) {
  assert(dof >= 0 && dof < n_);
  assert(!sealed_ && "constrain() must precede add()");
  constrained_[dof] = 1;
  value_[dof] = value;
}

void SystemBuilder::add(int i, int j, double v) {
  assert(i >= 0 && i < n_ && j >= 0 && j < n_);
  sealed_ = true;
  if (constrained_[i]) return;
  if (constrained_[j]) {
    rhs_[i] -= v * value_[j];
    return;
  }
  entries_.push_back({i, j, v});
}

void SystemBuilder::add_rhs(int i, double v) {
  assert(i >= 0 && i < n_);
  if (constrained_[i]) return;
  rhs_[i] += v;
}

CsrMatrix SystemBuilder::take_matrix() {
  for (int i = 0; i < n_; ++i) {
    if (constrained_[i]) {
      entries_.push_back({i, i, 1.0});
      rhs_[i] = value_[i];
    }
  }
  CsrMatrix m = CsrMatrix::from_triplets(n_, n_, std::move(entries_));
  entries_.clear();
  return m;
}

std::vector<double> SystemBuilder::take_rhs() { return std::move(rhs_); }

}  // namespace ddc::linalg
