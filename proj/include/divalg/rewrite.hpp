#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "divalg/subfield.hpp"
#include "divalg/words.hpp"

namespace divalg {

struct DeglexLess {
  bool operator()(const Word& a, const Word& b) const {
    return deglex_cmp(a, b) == std::strong_ordering::less;
  }
};

// A finite K-linear combination of words with the coefficients acting on the
// left.  Terms are kept in degree-lex order and zero coefficients are dropped
// as they arise, so the support is always exact.
class FormalSum {
public:
  FormalSum(FieldCtx coeff_ctx, int alphabet);

  const FieldCtx& coeff_ctx() const { return ctx_; }
  int alphabet() const { return alphabet_; }
  bool is_zero() const { return terms_.empty(); }
  int size() const { return static_cast<int>(terms_.size()); }
  const std::map<Word, FieldElem, DeglexLess>& terms() const { return terms_; }

  // Adds c * w, erasing the term if the total cancels.  Errors:
  // AlphabetMismatch, ContextMismatch.
  void add(const Word& w, const FieldElem& c);
  // Adds c * o termwise.
  void add_scaled(const FormalSum& o, const FieldElem& c);
  // Largest support word in degree-lex order; nullopt when zero.
  std::optional<Word> greatest() const;

  // Largest terms first, each as "(coefficient) * word".
  std::string str() const;

private:
  FieldCtx ctx_;
  int alphabet_ = 0;
  std::map<Word, FieldElem, DeglexLess> terms_;
};

// Product of the generators selected by the letters of w (the unit for the
// empty word).  Errors: ValidationError when the alphabet size does not match
// the generator count.
AlgebraElem eval_word(const std::vector<AlgebraElem>& gens, const Word& w);

// Sum over the support of embed(coefficient) * word value.
AlgebraElem eval_formal_sum(const SubfieldCtx& ctx, const std::vector<AlgebraElem>& gens,
                            const FormalSum& s);

// Rewrites w = v1 u^d v2 through the left minimal polynomial of the
// conjugate p u(gens) p^-1, p = v1(gens): the degree-k relation is padded
// with zero low coefficients up to exponent d and solved for the top power,
// leaving words v1 u^j v2 with j < d.  When k = 1 the base lies in K and the
// whole power folds into the single coefficient (p u p^-1)^d on v1 v2.  The
// output evaluates exactly to w(gens).
// Errors: NotInvertible (prefix value); DegreeTooLarge when k > d;
// ValidationError when the split does not reassemble to w.
FormalSum reduce_power_case(const SubfieldCtx& ctx, const std::vector<AlgebraElem>& gens,
                            const Word& w, const PowerSplit& decomp);

// Rewrites w = v1 u_1 ... u_d v2 through the substitution identity: subset
// terms v1 (sum over T of u_i)^d v2 are power-reduced as above and expanded
// into words of the parts, permuted products enter as plain words with
// coefficient -1.  d = 1 is the identity reduction {w: 1}.  The output
// evaluates exactly to w(gens).
// Errors: as the power case, plus ValidationError for malformed splits.
FormalSum reduce_shirshov_case(const SubfieldCtx& ctx, const std::vector<AlgebraElem>& gens,
                               const Word& w, const ShirshovSplit& decomp, int d);

// Reduction driver: starting from {w: 1}, repeatedly takes the degree-lex
// greatest support word longer than length_cap, decomposes it (power form
// first), and substitutes the matching reduction.  Every step replaces a word
// by strictly smaller ones, so the loop terminates; step_cap bounds it anyway.
// The result evaluates exactly to w(gens) and its support words all have
// length <= length_cap.
// Errors: StepBudgetExceeded; DegreeTooLarge; NotInvertible; ValidationError
// when an over-cap word admits no decomposition (cap below the alphabet's
// decomposition bound).
FormalSum rewrite_word(const SubfieldCtx& ctx, const std::vector<AlgebraElem>& gens,
                       const Word& w, int d, int length_cap, int step_cap);

// Dimension over K of the left span of all words in the generators of length
// at most max_len, by rank of the left-coordinate matrix.
int verify_span_dim(const SubfieldCtx& ctx, const std::vector<AlgebraElem>& gens, int max_len);

}  // namespace divalg
