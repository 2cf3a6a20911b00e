#pragma once

#include <optional>
#include <vector>

#include "divalg/exactfield.hpp"

namespace divalg {

// Dense matrix over a fixed field context, row-major.  All binary operations
// require matching contexts; shape violations raise Err::ShapeMismatch.
class Matrix {
public:
  Matrix(FieldCtx ctx, int rows, int cols);  // zero-filled
  static Matrix identity(const FieldCtx& ctx, int n);
  // Matrix unit e_{rc} (1 in row r, column c, zero elsewhere).
  static Matrix unit(const FieldCtx& ctx, int rows, int cols, int r, int c);
  static Matrix from_ints(const FieldCtx& ctx,
                          const std::vector<std::vector<std::int64_t>>& rows);
  static Matrix column(const FieldCtx& ctx, const std::vector<FieldElem>& entries);

  const FieldCtx& ctx() const { return ctx_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  FieldElem& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const FieldElem& at(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * cols_ + c];
  }

  Matrix operator-() const;
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  Matrix scaled(const FieldElem& c) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const;

  // Row-major vectorization as an (rows*cols) x 1 column.
  Matrix vectorized() const;

  std::string str() const;

private:
  FieldCtx ctx_;
  int rows_, cols_;
  std::vector<FieldElem> a_;
};

// Solves A x = b exactly by Gaussian elimination with deterministic pivoting:
// in each column the first row (top to bottom) with a nonzero entry is the
// pivot.  b may have several columns; free variables are set to zero, so the
// returned solution is canonical.  Returns nullopt when inconsistent.
std::optional<Matrix> solve_linear(const Matrix& A, const Matrix& b);

int rank(const Matrix& A);
FieldElem det(const Matrix& A);
std::optional<Matrix> inverse(const Matrix& A);
// Basis of the right nullspace as column vectors, one per free column of the
// reduced row echelon form, in ascending column order.
std::vector<Matrix> nullspace(const Matrix& A);

// Characteristic polynomial det(tI - A), computed by the division-free
// Berkowitz recurrence: the coefficient vector of the leading r x r principal
// submatrix is obtained from the previous one by a truncated convolution with
//   v_r = (1, -d_r, -R_r S_r, -R_r M_{r-1} S_r, ..., -R_r M_{r-1}^{r-2} S_r),
// where M_{r-1} is the previous principal block, R_r / S_r the bordering row
// and column, and d_r the new diagonal entry.
UPoly charpoly(const Matrix& A);

// Minimal polynomial: the first k for which vec(A^k) depends linearly on
// vec(A^0), ..., vec(A^{k-1}) yields the monic relation.
UPoly minpoly_matrix(const Matrix& A);

// Companion matrix of a monic polynomial: ones on the subdiagonal, negated
// coefficients in the last column.
Matrix companion(const UPoly& f);

Matrix direct_sum(const std::vector<Matrix>& blocks);

// True when the minimal and characteristic polynomials coincide.
bool is_nonderogatory(const Matrix& A);

// For nonderogatory A, the first vector v (in a deterministic small-height
// scan) whose Krylov matrix [v, Av, ..., A^{n-1}v] is invertible.
Matrix cyclic_vector_matrix(const Matrix& A);

// Exact P with P^{-1} A P = B, via Krylov bases reducing both sides to the
// same companion form.  Requires both matrices nonderogatory
// (Err::NotNonderogatory); returns nullopt when the characteristic
// polynomials differ (no such P exists).
std::optional<Matrix> similarity_transform(const Matrix& A, const Matrix& B);

Matrix poly_eval_matrix(const UPoly& f, const Matrix& A);

}  // namespace divalg
