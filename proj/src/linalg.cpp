#include "divalg/linalg.hpp"

#include <sstream>

namespace divalg {

namespace {

void require_same_ctx(const FieldCtx& a, const FieldCtx& b) {
  if (a != b)
    fail(Err::ContextMismatch,
         "matrices live over different fields: " + a.describe() + " vs " + b.describe());
}

void require_square(const Matrix& A, const char* what) {
  if (!A.is_square())
    fail(Err::NotSquare, std::string(what) + " requires a square matrix, got " +
                             std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
}

// Row echelon reduction in place.  Returns the pivot columns; `sign_flips`
// (optional) counts row swaps for determinant bookkeeping.
std::vector<int> row_reduce(Matrix& M, int* sign_flips = nullptr) {
  std::vector<int> pivots;
  int row = 0;
  if (sign_flips) *sign_flips = 0;
  for (int col = 0; col < M.cols() && row < M.rows(); ++col) {
    int pr = -1;
    for (int r = row; r < M.rows(); ++r) {
      if (!M.at(r, col).is_zero()) {
        pr = r;
        break;
      }
    }
    if (pr < 0) continue;
    if (pr != row) {
      for (int c = 0; c < M.cols(); ++c) std::swap(M.at(pr, c), M.at(row, c));
      if (sign_flips) ++*sign_flips;
    }
    const FieldElem inv = M.at(row, col).inverse();
    for (int c = col; c < M.cols(); ++c) M.at(row, c) *= inv;
    for (int r = 0; r < M.rows(); ++r) {
      if (r == row || M.at(r, col).is_zero()) continue;
      const FieldElem factor = M.at(r, col);
      for (int c = col; c < M.cols(); ++c) M.at(r, c) -= factor * M.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrix basics

Matrix::Matrix(FieldCtx ctx, int rows, int cols) : ctx_(std::move(ctx)), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) fail(Err::ShapeMismatch, "negative matrix dimension");
  a_.assign(static_cast<std::size_t>(rows) * cols, FieldElem::zero(ctx_));
}

Matrix Matrix::identity(const FieldCtx& ctx, int n) {
  Matrix m(ctx, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = FieldElem::one(ctx);
  return m;
}

Matrix Matrix::unit(const FieldCtx& ctx, int rows, int cols, int r, int c) {
  Matrix m(ctx, rows, cols);
  m.at(r, c) = FieldElem::one(ctx);
  return m;
}

Matrix Matrix::from_ints(const FieldCtx& ctx, const std::vector<std::vector<std::int64_t>>& rows) {
  const int nr = static_cast<int>(rows.size());
  const int nc = nr == 0 ? 0 : static_cast<int>(rows[0].size());
  Matrix m(ctx, nr, nc);
  for (int r = 0; r < nr; ++r) {
    if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != nc)
      fail(Err::ShapeMismatch, "ragged row in matrix literal");
    for (int c = 0; c < nc; ++c)
      m.at(r, c) = FieldElem::from_int(ctx, rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  }
  return m;
}

Matrix Matrix::column(const FieldCtx& ctx, const std::vector<FieldElem>& entries) {
  Matrix m(ctx, static_cast<int>(entries.size()), 1);
  for (int r = 0; r < m.rows(); ++r) m.at(r, 0) = entries[static_cast<std::size_t>(r)];
  return m;
}

Matrix Matrix::operator-() const {
  Matrix r = *this;
  for (FieldElem& x : r.a_) x = -x;
  return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_ctx(a.ctx_, b.ctx_);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    fail(Err::ShapeMismatch, "matrix addition shape mismatch");
  Matrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_ctx(a.ctx_, b.ctx_);
  if (a.cols_ != b.rows_)
    fail(Err::ShapeMismatch, "matrix product shape mismatch: " + std::to_string(a.cols_) +
                                 " vs " + std::to_string(b.rows_));
  Matrix r(a.ctx_, a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const FieldElem& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const FieldElem& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

Matrix Matrix::scaled(const FieldElem& c) const {
  Matrix r = *this;
  for (FieldElem& x : r.a_) x *= c;
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(ctx_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (ctx_ != o.ctx_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const FieldElem& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix Matrix::vectorized() const {
  Matrix v(ctx_, rows_ * cols_, 1);
  for (int i = 0; i < rows_ * cols_; ++i) v.at(i, 0) = a_[static_cast<std::size_t>(i)];
  return v;
}

std::string Matrix::str() const {
  std::ostringstream out;
  out << "[";
  for (int i = 0; i < rows_; ++i) {
    out << (i ? ", [" : "[");
    for (int j = 0; j < cols_; ++j) out << (j ? ", " : "") << at(i, j).str();
    out << "]";
  }
  out << "]";
  return out.str();
}

// ---------------------------------------------------------------------------
// Solving

std::optional<Matrix> solve_linear(const Matrix& A, const Matrix& b) {
  require_same_ctx(A.ctx(), b.ctx());
  if (A.rows() != b.rows()) fail(Err::ShapeMismatch, "solve_linear: row counts differ");
  // Reduce the augmented matrix [A | b].
  Matrix aug(A.ctx(), A.rows(), A.cols() + b.cols());
  for (int r = 0; r < A.rows(); ++r) {
    for (int c = 0; c < A.cols(); ++c) aug.at(r, c) = A.at(r, c);
    for (int c = 0; c < b.cols(); ++c) aug.at(r, A.cols() + c) = b.at(r, c);
  }
  std::vector<int> pivots = row_reduce(aug);
  // A pivot in the augmented part means some equation reduces to 0 = 1.
  for (int col : pivots)
    if (col >= A.cols()) return std::nullopt;
  Matrix x(A.ctx(), A.cols(), b.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (int c = 0; c < b.cols(); ++c)
      x.at(pivots[i], c) = aug.at(static_cast<int>(i), A.cols() + c);
  return x;
}

int rank(const Matrix& A) {
  Matrix m = A;
  return static_cast<int>(row_reduce(m).size());
}

FieldElem det(const Matrix& A) {
  require_square(A, "det");
  // Forward elimination without normalization, tracking row swaps.
  Matrix m = A;
  const int n = m.rows();
  FieldElem d = FieldElem::one(m.ctx());
  for (int col = 0; col < n; ++col) {
    int pr = -1;
    for (int r = col; r < n; ++r)
      if (!m.at(r, col).is_zero()) {
        pr = r;
        break;
      }
    if (pr < 0) return FieldElem::zero(m.ctx());
    if (pr != col) {
      for (int c = 0; c < n; ++c) std::swap(m.at(pr, c), m.at(col, c));
      d = -d;
    }
    d *= m.at(col, col);
    const FieldElem inv = m.at(col, col).inverse();
    for (int r = col + 1; r < n; ++r) {
      if (m.at(r, col).is_zero()) continue;
      const FieldElem factor = m.at(r, col) * inv;
      for (int c = col; c < n; ++c) m.at(r, c) -= factor * m.at(col, c);
    }
  }
  return d;
}

std::optional<Matrix> inverse(const Matrix& A) {
  require_square(A, "inverse");
  auto x = solve_linear(A, Matrix::identity(A.ctx(), A.rows()));
  if (!x) return std::nullopt;
  // solve_linear finds some preimage; for singular A the result is not a
  // two-sided inverse, so verify.
  if (A * *x != Matrix::identity(A.ctx(), A.rows())) return std::nullopt;
  return x;
}

std::vector<Matrix> nullspace(const Matrix& A) {
  Matrix m = A;
  std::vector<int> pivots = row_reduce(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(A.cols()), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Matrix> basis;
  for (int fc = 0; fc < A.cols(); ++fc) {
    if (is_pivot[static_cast<std::size_t>(fc)]) continue;
    Matrix v(A.ctx(), A.cols(), 1);
    v.at(fc, 0) = FieldElem::one(A.ctx());
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v.at(pivots[i], 0) = -m.at(static_cast<int>(i), fc);
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Characteristic and minimal polynomials

UPoly charpoly(const Matrix& A) {
  require_square(A, "charpoly");
  const FieldCtx& ctx = A.ctx();
  const int n = A.rows();
  // Leading-first coefficient vector of the current principal submatrix.
  std::vector<FieldElem> c = {FieldElem::one(ctx)};
  for (int r = 1; r <= n; ++r) {
    // Border data of the r x r principal block.
    std::vector<FieldElem> v;
    v.reserve(static_cast<std::size_t>(r) + 1);
    v.push_back(FieldElem::one(ctx));
    v.push_back(-A.at(r - 1, r - 1));
    // w starts as the bordering column S_r and is repeatedly hit by M_{r-1}.
    std::vector<FieldElem> w(static_cast<std::size_t>(r) - 1, FieldElem::zero(ctx));
    for (int i = 0; i < r - 1; ++i) w[static_cast<std::size_t>(i)] = A.at(i, r - 1);
    for (int k = 2; k <= r; ++k) {
      FieldElem dot = FieldElem::zero(ctx);
      for (int i = 0; i < r - 1; ++i) dot += A.at(r - 1, i) * w[static_cast<std::size_t>(i)];
      v.push_back(-dot);
      if (k == r) break;
      std::vector<FieldElem> w2(static_cast<std::size_t>(r) - 1, FieldElem::zero(ctx));
      for (int i = 0; i < r - 1; ++i) {
        for (int j = 0; j < r - 1; ++j) {
          if (A.at(i, j).is_zero()) continue;
          w2[static_cast<std::size_t>(i)] += A.at(i, j) * w[static_cast<std::size_t>(j)];
        }
      }
      w = std::move(w2);
    }
    // Truncated convolution c' = v * c, keeping r + 1 leading coefficients.
    std::vector<FieldElem> c2(static_cast<std::size_t>(r) + 1, FieldElem::zero(ctx));
    for (std::size_t i = 0; i < c2.size(); ++i)
      for (std::size_t j = 0; j < c.size() && j <= i; ++j) {
        const std::size_t k = i - j;
        if (k < v.size()) c2[i] += v[k] * c[j];
      }
    c = std::move(c2);
  }
  // c holds leading-first coefficients of det(tI - A).
  std::vector<FieldElem> low_first(c.rbegin(), c.rend());
  return UPoly(ctx, std::move(low_first));
}

UPoly minpoly_matrix(const Matrix& A) {
  require_square(A, "minpoly");
  const FieldCtx& ctx = A.ctx();
  const int n = A.rows();
  if (n == 0) fail(Err::ShapeMismatch, "minpoly of an empty matrix");
  std::vector<Matrix> pow_vecs;  // vec(A^0), vec(A^1), ...
  Matrix p = Matrix::identity(ctx, n);
  pow_vecs.push_back(p.vectorized());
  for (int k = 1; k <= n; ++k) {
    p = p * A;
    const Matrix target = p.vectorized();
    Matrix base(ctx, n * n, k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n * n; ++i) base.at(i, j) = pow_vecs[static_cast<std::size_t>(j)].at(i, 0);
    if (auto x = solve_linear(base, target)) {
      std::vector<FieldElem> coeffs;
      coeffs.reserve(static_cast<std::size_t>(k) + 1);
      for (int i = 0; i < k; ++i) coeffs.push_back(-x->at(i, 0));
      coeffs.push_back(FieldElem::one(ctx));
      return UPoly(ctx, std::move(coeffs));
    }
    pow_vecs.push_back(target);
  }
  // Unreachable: Cayley-Hamilton guarantees a relation at k = n.
  fail(Err::NotSquare, "internal: no minimal polynomial found");
}

Matrix companion(const UPoly& f) {
  if (f.degree() < 1) fail(Err::ZeroPolynomial, "companion matrix needs degree >= 1");
  if (!f.is_monic()) fail(Err::NotMonic, "companion matrix needs a monic polynomial");
  const int n = f.degree();
  Matrix C(f.ctx(), n, n);
  for (int i = 0; i + 1 < n; ++i) C.at(i + 1, i) = FieldElem::one(f.ctx());
  for (int i = 0; i < n; ++i) C.at(i, n - 1) = -f.coeff(i);
  return C;
}

Matrix direct_sum(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) fail(Err::ShapeMismatch, "direct_sum of no blocks");
  int n = 0;
  for (const Matrix& b : blocks) {
    require_same_ctx(blocks[0].ctx(), b.ctx());
    require_square(b, "direct_sum");
    n += b.rows();
  }
  Matrix r(blocks[0].ctx(), n, n);
  int off = 0;
  for (const Matrix& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) r.at(off + i, off + j) = b.at(i, j);
    off += b.rows();
  }
  return r;
}

bool is_nonderogatory(const Matrix& A) {
  require_square(A, "is_nonderogatory");
  return minpoly_matrix(A).degree() == A.rows();
}

Matrix cyclic_vector_matrix(const Matrix& A) {
  require_square(A, "cyclic_vector_matrix");
  const FieldCtx& ctx = A.ctx();
  const int n = A.rows();
  // Entries are scanned over {0, ..., s}: the Krylov determinant is a nonzero
  // polynomial of degree n in the coordinates, so a grid of side n + 1 always
  // contains a witness (over a small prime field the grid is the whole space).
  std::int64_t top = n;
  if (ctx.characteristic() > 0 && ctx.characteristic() - 1 < top) top = ctx.characteristic() - 1;
  std::vector<std::int64_t> digits(static_cast<std::size_t>(n), 0);
  for (;;) {
    // odometer step first: the all-zero vector is never cyclic
    int i = 0;
    while (i < n && ++digits[static_cast<std::size_t>(i)] > top) {
      digits[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == n) break;
    Matrix v(ctx, n, 1);
    for (int r = 0; r < n; ++r) v.at(r, 0) = FieldElem::from_int(ctx, digits[static_cast<std::size_t>(r)]);
    Matrix kry(ctx, n, n);
    Matrix cur = v;
    for (int j = 0; j < n; ++j) {
      for (int r = 0; r < n; ++r) kry.at(r, j) = cur.at(r, 0);
      if (j + 1 < n) cur = A * cur;
    }
    if (rank(kry) == n) return kry;
  }
  fail(Err::NotNonderogatory, "no cyclic vector: matrix is derogatory");
}

std::optional<Matrix> similarity_transform(const Matrix& A, const Matrix& B) {
  require_same_ctx(A.ctx(), B.ctx());
  require_square(A, "similarity_transform");
  require_square(B, "similarity_transform");
  if (A.rows() != B.rows()) fail(Err::ShapeMismatch, "similarity_transform: sizes differ");
  if (!is_nonderogatory(A) || !is_nonderogatory(B))
    fail(Err::NotNonderogatory, "similarity_transform requires nonderogatory matrices");
  if (charpoly(A) != charpoly(B)) return std::nullopt;
  // K_A^{-1} A K_A and K_B^{-1} B K_B are the same companion matrix, so
  // P = K_A K_B^{-1} conjugates A onto B.
  const Matrix ka = cyclic_vector_matrix(A);
  const Matrix kb = cyclic_vector_matrix(B);
  auto kb_inv = inverse(kb);
  Matrix P = ka * *kb_inv;
  return P;
}

Matrix poly_eval_matrix(const UPoly& f, const Matrix& A) {
  require_square(A, "poly_eval_matrix");
  if (f.ctx() != A.ctx()) fail(Err::ContextMismatch, "polynomial and matrix over different fields");
  Matrix acc(A.ctx(), A.rows(), A.rows());
  for (int i = f.degree(); i >= 0; --i) {
    acc = acc * A;
    const FieldElem c = f.coeff(i);
    if (!c.is_zero())
      for (int r = 0; r < A.rows(); ++r) acc.at(r, r) += c;
  }
  return acc;
}

}  // namespace divalg
