#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "divalg/algebra.hpp"
#include "divalg/subfield.hpp"

namespace divalg {

// Degree statistics over a sample of algebra elements: the largest minimal
// polynomial degree over the center and the largest left minimal polynomial
// degree over K, together with elements attaining them.
struct DegreeProfile {
  int sample_size = 0;
  int max_deg_f = 0;
  int max_ldeg_k = 0;
  std::optional<AlgebraElem> arg_max_deg_f;
  std::optional<AlgebraElem> arg_max_ldeg_k;
};

// Minimal monic polynomial of x over the coefficient field, with the center
// certified first: throws CenterNotField when the center has dimension != 1
// and the algebra is not commutative (the coefficient field would not be
// central, so "algebraic degree over F" would be meaningless).
UPoly minpoly_element(const AlgebraElem& x);

// Least-degree monic relation x^d + k_{d-1} x^{d-1} + ... + k_0 = 0 whose
// coefficients k_i lie in K and multiply on the LEFT.  Found by expressing the
// powers of x in left K-coordinates and solving over K for the first linear
// dependence.  Always exists with d <= [K:F].  The result is a polynomial over
// ctx.k_ctx; it has degree 1 exactly when x lies in K.
UPoly left_minpoly(const SubfieldCtx& ctx, const AlgebraElem& x);

// Evaluator for the alternating multilinear sum
//
//   sum over permutations s of {0..d} of
//     sign(s) * x^{s(0)} y_1 x^{s(1)} y_2 ... y_d x^{s(d)}
//
// with (d+1)! terms.  The element x is fixed per evaluator (its powers
// x^0..x^d are computed once by reset); each eval() call sweeps the
// permutations in lexicographic order with an incrementally maintained sign
// and shares partial products across permutations with a common prefix.
// An evaluator is cheap to reuse across many y-tuples and across resets.
class GdEvaluator {
public:
  GdEvaluator(AlgebraPtr alg, int d);

  // Recomputes the cached powers for a new x (same algebra).
  void reset(const AlgebraElem& x);

  // ys must point at d elements of the same algebra.  The returned reference
  // stays valid until the next eval/reset.
  const AlgebraElem& eval(const AlgebraElem* const* ys);
  const AlgebraElem& eval(const std::vector<AlgebraElem>& ys);

  int degree() const { return d_; }
  const AlgebraPtr& alg() const { return alg_; }

private:
  void sweep(int slot);

  AlgebraPtr alg_;
  int d_;
  int sign_ = 1;
  std::vector<AlgebraElem> powers_;   // x^0 .. x^d
  std::vector<AlgebraElem> partial_;  // product through the current slot
  std::vector<AlgebraElem> prefix_;   // partial * next y, shared by the slot's choices
  std::vector<char> used_;
  const AlgebraElem* const* ys_ = nullptr;
  AlgebraElem acc_;
  MulWorkspace ws_;
};

// One-shot convenience wrapper around GdEvaluator (d = ys.size() >= 1).
AlgebraElem eval_gd(const AlgebraElem& x, const std::vector<AlgebraElem>& ys);

// True iff the alternating sum above vanishes for every d-tuple of
// distinguished basis elements in the y slots, which by multilinearity decides
// whether x is algebraic of degree <= d over the coefficient field.  Requires
// a one-dimensional center (CenterNotField otherwise) and d >= 1.
//
// is_alg_bounded partitions the (dim)^d tuple sweep across OpenMP threads
// with an early stop once any tuple evaluates nonzero; is_alg_bounded_serial
// is the straight-line reference loop.  They always agree.
bool is_alg_bounded(const AlgebraElem& x, int d);
bool is_alg_bounded_serial(const AlgebraElem& x, int d);

// Outcome of a vanishing sweep: `total` tuples in canonical order, `witness`
// the index of the first tuple with a nonzero value (-1 when the identity
// holds everywhere).  Serial and parallel runs report identical results.
struct GdSweep {
  long long total = 0;
  long long witness = -1;
  bool identity_holds() const { return witness < 0; }
};

// Sweeps every (x, y_1, ..., y_d) tuple over the whole (finite) algebra.
// Only available over prime coefficient fields and refuses sweeps larger than
// an exact-arithmetic desk budget (ValidationError in both cases).
GdSweep gd_exhaustive_sweep(const AlgebraPtr& alg, int d, bool parallel = true);

// Sweeps `count` pseudorandom (x, y_1, ..., y_d) tuples with integer
// coordinates of height at most `height`.  Tuples are generated up front from
// the seed, so serial and parallel runs see the same data.
GdSweep gd_random_sweep(const AlgebraPtr& alg, int d, long long count, int height,
                        std::uint64_t seed, bool parallel = true);

// Inverse of a from the constant term of its left minimal polynomial
// x^d + k_{d-1}x^{d-1} + ... + k_0: returns
//
//   (a^{d-1} + k_{d-1} a^{d-2} + ... + k_1) * (-k_0)^{-1}
//
// and verifies the result is a two-sided inverse (ValidationError if the
// as-displayed scalar placement fails to commute, which cannot happen when
// k_0 is central).  Throws ZeroConstantTerm when k_0 = 0 (a is either zero or
// a zero divisor against its K-relation).
AlgebraElem left_inverse_from_minpoly(const SubfieldCtx& ctx, const AlgebraElem& a);

// For alpha generating a maximal subfield (minimal polynomial irreducible of
// degree n = [K:F]), finds u != 0 such that u, u*alpha, ..., u*alpha^{n-1}
// are left independent over K — equivalently u*alpha*u^{-1} has left degree n.
// Deterministic scan: distinguished basis elements first, then pairwise sums,
// each candidate checked by an exact rank computation over K.
// Errors: NotMaximalGenerator (alpha fails the precondition), SearchExhausted.
AlgebraElem cyclic_vector(const SubfieldCtx& ctx, const AlgebraElem& alpha);

// Degree statistics over an explicit sample, or over `size` pseudorandom
// elements of the given coordinate height.  The sampling overload appends the
// conjugate u*alpha*u^{-1} of the subfield generator by the cyclic vector u
// when include_conjugate_witness is set and the conjugation is possible; that
// witness pins max_ldeg_k to n.
DegreeProfile degree_profile(const SubfieldCtx& ctx, const std::vector<AlgebraElem>& sample);
DegreeProfile degree_profile(const SubfieldCtx& ctx, Sampler& rng, int size, int height,
                             bool include_conjugate_witness = true);

}  // namespace divalg
