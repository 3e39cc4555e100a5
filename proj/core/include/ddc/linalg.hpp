#pragma once

// Sparse linear algebra: CSR storage, a triplet-based system builder with
// Dirichlet elimination, Krylov solvers (CG, BiCGSTAB) with Jacobi and ILU(0)
// preconditioning, and a dense LU fallback for small systems.  Everything is
// deterministic: no randomized starting vectors, no threading.

#include <memory>
#include <string>
#include <vector>

namespace ddc::linalg {

// ---------------------------------------------------------------------------
// Dense vector helpers
// ---------------------------------------------------------------------------
double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);
// y += alpha * x
void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y);

// ---------------------------------------------------------------------------
// CSR matrix
// ---------------------------------------------------------------------------
struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

class CsrMatrix {
 public:
  CsrMatrix() = default;

  // Sorts the triplets and sums duplicates.  Column indices within each row
  // end up strictly increasing.
  static CsrMatrix from_triplets(int n_rows, int n_cols,
                                 std::vector<Triplet> entries);

  // Adopts ready-made CSR arrays; column indices must already be strictly
  // increasing within each row (checked in debug builds).
  static CsrMatrix from_raw(int n_rows, int n_cols, std::vector<int> row_ptr,
                            std::vector<int> col_idx,
                            std::vector<double> values);

  int rows() const { return n_rows_; }
  int cols() const { return n_cols_; }
  int nonzeros() const { return static_cast<int>(values_.size()); }

  // y = A x
  void apply(const std::vector<double>& x, std::vector<double>& y) const;
  std::vector<double> apply(const std::vector<double>& x) const;

  std::vector<double> diagonal() const;

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  // Coordinate-format text export (MatrixMarket), mostly for debugging.
  void write_matrix_market(const std::string& path) const;

 private:
  int n_rows_ = 0;
  int n_cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

// ||b - A x|| / ||b||  (absolute norm when b = 0)
double relative_residual(const CsrMatrix& a, const std::vector<double>& x,
                         const std::vector<double>& b);

// ---------------------------------------------------------------------------
// System builder
//
// Accumulates triplets and a right-hand side for a square system.  Dirichlet
// constraints are declared up front; contributions into a constrained row are
// dropped, contributions from a constrained column are moved to the right-hand
// side, and finalize() emits an identity row with the prescribed value.  This
// keeps a symmetric matrix symmetric after elimination.
// ---------------------------------------------------------------------------
class SystemBuilder {
 public:
  explicit SystemBuilder(int n);

  int size() const { return n_; }

  // Declare dof as fixed to `value`.  Must precede add()/add_rhs() calls.
  void constrain(int dof, double value);
  bool is_constrained(int dof) const { return constrained_[dof] != 0; }
  double constrained_value(int dof) const { return value_[dof]; }

  void add(int i, int j, double v);
  void add_rhs(int i, double v);

  // Finalize and hand over the system.  The builder is left empty.
  CsrMatrix take_matrix();
  const std::vector<double>& rhs() const { return rhs_; }
  std::vector<double> take_rhs();

 private:
  int n_ = 0;
  bool sealed_ = false;  // set once add() has been called
  std::vector<Triplet> entries_;
  std::vector<double> rhs_;
  std::vector<char> constrained_;
  std::vector<double> value_;
};

// ---------------------------------------------------------------------------
// Preconditioners
// ---------------------------------------------------------------------------
class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  // z = M^{-1} r
  virtual void apply(const std::vector<double>& r, std::vector<double>& z) const = 0;
};

class IdentityPreconditioner final : public Preconditioner {
 public:
  void apply(const std::vector<double>& r, std::vector<double>& z) const override;
};

// Diagonal scaling.  Zero (or tiny) diagonal entries fall back to 1, so rows
// such as a Lagrange-multiplier bordering row are passed through unchanged.
class JacobiPreconditioner final : public Preconditioner {
 public:
  explicit JacobiPreconditioner(const CsrMatrix& a);
  void apply(const std::vector<double>& r, std::vector<double>& z) const override;

 private:
  std::vector<double> inv_diag_;
};

// Incomplete LU factorization with zero fill-in on the matrix sparsity
// pattern.  Zero pivots are replaced by 1 so structurally singular diagonal
// entries (again: multiplier rows) do not abort the factorization.
class Ilu0Preconditioner final : public Preconditioner {
 public:
  explicit Ilu0Preconditioner(const CsrMatrix& a);
  void apply(const std::vector<double>& r, std::vector<double>& z) const override;

 private:
  std::vector<int> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<double> values_;
  std::vector<int> diag_pos_;
};

// Fill-reducing ordering from recursive graph bisection (BFS-level
// separators ordered last).  `pinned_last`, if non-negative, is forced to
// the final position; use it for a dense bordering row, whose early
// elimination would otherwise fill the whole factor.  Returns `order` with
// order[new_index] = old_index.
std::vector<int> fill_reducing_order(const CsrMatrix& a, int pinned_last = -1);

// Exact LU factorization of the matrix permuted by a fill-reducing order
// (no numerical pivoting; the full symbolic fill pattern of the symmetrized
// graph is kept, so the elimination itself is complete).  Used as a strong
// preconditioner for the Krylov solvers on systems too large for dense LU;
// the outer Krylov loop certifies the true residual, which also covers the
// rare case of a pivot-guard replacement on a singular leading minor.
class SparseLuPreconditioner final : public Preconditioner {
 public:
  // `pinned_last` as in fill_reducing_order; -1 derives it automatically
  // (the densest row, when it is an outlier).
  explicit SparseLuPreconditioner(const CsrMatrix& a, int pinned_last = -1);
  void apply(const std::vector<double>& r, std::vector<double>& z) const override;
  // Stored factor entries (pattern size), for diagnostics and tests.
  std::size_t factor_entries() const { return factor_entries_; }

 private:
  std::vector<int> order_;  // order_[new] = old
  std::size_t factor_entries_ = 0;
  // Exact LU on the filled permuted pattern, stored directly.
  std::vector<int> fptr_, fcol_, diag_pos_;
  std::vector<double> fval_;
};

// Optional cross-solve reuse of a factorization-based preconditioner: a
// solver driver may keep one slot per system it repeatedly solves (Newton
// sweeps, time steps); solve() fills the slot on first use and refreshes it
// from the current matrix when convergence degrades.
struct FactorSlot {
  std::shared_ptr<const Preconditioner> factor;
};

// ---------------------------------------------------------------------------
// Solvers
// ---------------------------------------------------------------------------
struct SolverOptions {
  double tol = 1e-10;           // relative residual target
  int max_iterations = 20000;
  int dense_threshold = 2000;   // solve() uses dense LU at or below this size
  bool symmetric_positive = false;  // selects CG instead of BiCGSTAB
  enum class Precond { kIdentity, kJacobi, kIlu0 } precond = Precond::kIlu0;
  // Above dense_threshold, solve() preconditions BiCGSTAB with a sparse LU
  // factorization.  A non-null slot lets the caller reuse that factorization
  // across solves with matrices of the same structure (Newton sweeps, time
  // steps); it is refreshed whenever a solve needs more than rebuild_after
  // iterations or fails to converge.
  FactorSlot* factor_slot = nullptr;
  int rebuild_after = 40;
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  // true relative residual, recomputed at exit
  std::string method;
};

// Preconditioned conjugate gradients; requires a symmetric positive definite
// matrix (and a symmetric preconditioner to retain theory).
SolveReport cg(const CsrMatrix& a, const std::vector<double>& b,
               std::vector<double>& x, const Preconditioner& m,
               double tol, int max_iterations);

// Preconditioned BiCGSTAB for general square systems.  Breakdown (rho or
// omega collapsing) is reported through `converged == false` unless the true
// residual already meets the target.
SolveReport bicgstab(const CsrMatrix& a, const std::vector<double>& b,
                     std::vector<double>& x, const Preconditioner& m,
                     double tol, int max_iterations);

// Dense LU with partial pivoting; throws std::runtime_error on a numerically
// singular matrix.  Intended for small systems and as a cross-check oracle.
std::vector<double> dense_lu_solve(const CsrMatrix& a,
                                   const std::vector<double>& b);

// Front door: dense LU for small systems, otherwise preconditioned Krylov
// (CG when symmetric_positive, BiCGSTAB otherwise); falls back to dense LU
// when a Krylov solve stalls and the system is small enough to afford it.
SolveReport solve(const CsrMatrix& a, const std::vector<double>& b,
                  std::vector<double>& x, const SolverOptions& options = {});

}  // namespace ddc::linalg
