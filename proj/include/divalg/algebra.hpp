#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "divalg/linalg.hpp"
#include "divalg/rng.hpp"

namespace divalg {

class AlgebraElem;
class AlgebraDef;
using AlgebraPtr = std::shared_ptr<const AlgebraDef>;

// Scratch space for the multiplication kernel.  Hot loops keep one alive so
// repeated products reuse storage instead of allocating.
struct MulWorkspace {
  FieldElem t, t2, zero;
  std::vector<FieldElem> acc;
};

// A finite-dimensional associative unital algebra over a field, given by
// structure constants on a distinguished basis.  The table is stored sparsely:
// for each basis pair (i, j), the nonzero coordinates of e_i * e_j.
// Associativity and the two-sided unit are verified eagerly at construction.
class AlgebraDef {
public:
  // Metadata about how the algebra was built (used for display and for the
  // rational quaternion arithmetic tests).
  enum class Kind { Table, Quaternion, MatrixAlg };

  struct Ent {
    int k;
    FieldElem c;
    int shortcut;  // 1 if c == 1, -1 if c == -1, 0 otherwise
  };

  static AlgebraPtr make(const FieldCtx& ctx, int dim, std::vector<std::string> names,
                         const std::vector<std::vector<std::vector<FieldElem>>>& constants,
                         const std::vector<FieldElem>* unit_coords = nullptr);

  const FieldCtx& ctx() const { return ctx_; }
  int dim() const { return dim_; }
  Kind kind() const { return kind_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<FieldElem>& unit_coords() const { return unit_; }
  const std::vector<Ent>& table(int i, int j) const {
    return table_[static_cast<std::size_t>(i) * dim_ + j];
  }
  // Structure constant c_{ijk} in e_i e_j = sum_k c_{ijk} e_k.
  FieldElem constant(int i, int j, int k) const;

  // Basis of the center, fixed at construction (coordinate vectors in the
  // distinguished basis, deterministic order).
  const std::vector<std::vector<FieldElem>>& center_coords() const { return center_; }
  int center_dim() const { return static_cast<int>(center_.size()); }
  bool is_commutative() const { return commutative_; }

  // Quaternion parameters (Kind::Quaternion only).
  const FieldElem& quat_a() const;
  const FieldElem& quat_b() const;
  int matrix_size() const;  // Kind::MatrixAlg only

  bool same_structure(const AlgebraDef& o) const;

  // dst := x * y.  All three must belong to this algebra; dst may alias x or y.
  void mul_into(AlgebraElem& dst, const AlgebraElem& x, const AlgebraElem& y,
                MulWorkspace& ws) const;

private:
  friend AlgebraPtr quaternion_algebra(const FieldCtx&, const FieldElem&, const FieldElem&);
  friend AlgebraPtr matrix_algebra(const FieldCtx&, int);

  AlgebraDef() = default;
  static AlgebraPtr finish(AlgebraDef&& def, const std::vector<FieldElem>* unit_coords);
  void verify_associativity() const;
  void resolve_unit(const std::vector<FieldElem>* unit_coords);
  void compute_center();

  FieldCtx ctx_;
  int dim_ = 0;
  Kind kind_ = Kind::Table;
  std::vector<std::string> names_;
  std::vector<std::vector<Ent>> table_;
  std::vector<FieldElem> unit_;
  std::vector<std::vector<FieldElem>> center_;
  bool commutative_ = false;
  // quaternion parameters when applicable
  std::vector<FieldElem> quat_params_;
  int matrix_n_ = 0;
};

// The symbol algebra (a, b / F): basis 1, i, j, k with i^2 = a, j^2 = b,
// ij = -ji = k.  Requires char F != 2 (Err::CharacteristicTwo) and nonzero
// parameters (Err::ZeroParameter).
AlgebraPtr quaternion_algebra(const FieldCtx& ctx, const FieldElem& a, const FieldElem& b);

// M_n(F) on the matrix-unit basis e11, e12, ..., enn (row-major order).
AlgebraPtr matrix_algebra(const FieldCtx& ctx, int n);

// Element of an algebra: coordinates in the distinguished basis.
class AlgebraElem {
public:
  explicit AlgebraElem(AlgebraPtr alg);  // zero
  static AlgebraElem basis(const AlgebraPtr& alg, int idx);
  static AlgebraElem unit(const AlgebraPtr& alg);
  static AlgebraElem scalar(const AlgebraPtr& alg, const FieldElem& c);
  static AlgebraElem from_coords(const AlgebraPtr& alg, std::vector<FieldElem> coords);
  static AlgebraElem from_int_coords(const AlgebraPtr& alg,
                                     const std::vector<std::int64_t>& coords);

  const AlgebraPtr& alg() const { return alg_; }
  const FieldCtx& ctx() const { return alg_->ctx(); }
  int dim() const { return alg_->dim(); }
  const std::vector<FieldElem>& coords() const { return c_; }
  const FieldElem& coord(int i) const { return c_[static_cast<std::size_t>(i)]; }
  FieldElem& coord(int i) { return c_[static_cast<std::size_t>(i)]; }

  bool is_zero() const;
  bool is_unit_one() const;

  AlgebraElem operator-() const;
  friend AlgebraElem operator+(AlgebraElem a, const AlgebraElem& b);
  friend AlgebraElem operator-(AlgebraElem a, const AlgebraElem& b);
  friend AlgebraElem operator*(const AlgebraElem& a, const AlgebraElem& b);
  AlgebraElem& operator+=(const AlgebraElem& o);
  AlgebraElem& operator-=(const AlgebraElem& o);
  AlgebraElem scaled(const FieldElem& c) const;
  bool operator==(const AlgebraElem& o) const;
  bool operator!=(const AlgebraElem& o) const { return !(*this == o); }

  std::string str() const;

private:
  friend class AlgebraDef;  // the multiplication kernel swaps coordinate buffers

  AlgebraPtr alg_;
  std::vector<FieldElem> c_;
};

// Minimal polynomial of x over the coefficient field of the algebra (first
// linear dependence among 1, x, x^2, ...).  Always monic, degree >= 1.
UPoly minpoly_in_algebra(const AlgebraElem& x);

// Exact inverse when it exists: if the minimal polynomial has nonzero
// constant term c, then -c^{-1} (m(x) - c)/x is a two-sided inverse;
// otherwise x is a zero divisor and nullopt is returned.
std::optional<AlgebraElem> alg_inverse(const AlgebraElem& x);

// Multiplicative and additive commutators (x y x^{-1} y^{-1}, xy - yx).
// Err::NotInvertible when x or y has no inverse.
std::pair<AlgebraElem, AlgebraElem> commutators(const AlgebraElem& x, const AlgebraElem& y);

bool is_central(const AlgebraElem& x);
std::vector<AlgebraElem> center_basis(const AlgebraPtr& alg);

AlgebraElem poly_eval_elem(const UPoly& f, const AlgebraElem& x);

// Uniform coordinates of height <= `height` (reduced mod p over prime
// fields).  The seed fully determines the result.
AlgebraElem random_element(const AlgebraPtr& alg, int height, std::uint64_t seed);
AlgebraElem random_element(const AlgebraPtr& alg, int height, Sampler& rng);

// --- rational quaternion division test ------------------------------------

// Hilbert symbol (a, b)_v for nonzero rationals at a place v: pass p = 0 for
// the real place, p = 2, or an odd prime.
int hilbert_symbol(const mpq_class& a, const mpq_class& b, std::int64_t p);

// The finitely many places where (a, b)_v could be -1 (the real place and the
// primes dividing 2ab), as candidates for the product-formula and division
// tests.
std::vector<std::int64_t> hilbert_relevant_places(const mpq_class& a, const mpq_class& b);

// (a, b / Q) is a division algebra iff some local symbol equals -1.
// Coefficient field must be Q; parameters must be nonzero.
bool is_division_quaternion(const FieldElem& a, const FieldElem& b);

}  // namespace divalg
