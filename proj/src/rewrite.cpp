#include "divalg/rewrite.hpp"

#include <string>
#include <utility>

#include "divalg/identities.hpp"
#include "divalg/linalg.hpp"

namespace divalg {

namespace {

void require_gens(const SubfieldCtx& ctx, const std::vector<AlgebraElem>& gens) {
  if (gens.empty()) fail(Err::ValidationError, "need at least one generator");
  for (const auto& g : gens) {
    if (g.alg() != ctx.alg) fail(Err::AlgebraMismatch, "generator outside the context algebra");
  }
}

void require_gens_for_word(const SubfieldCtx& ctx, const std::vector<AlgebraElem>& gens,
                           const Word& w) {
  require_gens(ctx, gens);
  if (static_cast<int>(gens.size()) != w.alphabet) {
    fail(Err::ValidationError, "word over alphabet of " + std::to_string(w.alphabet) +
                                   " letters but " + std::to_string(gens.size()) +
                                   " generators supplied");
  }
}

FieldElem coeff_power(const FieldElem& kappa, int d) {
  FieldElem c = FieldElem::one(kappa.ctx());
  for (int i = 0; i < d; ++i) c = c * kappa;
  return c;
}

// Shared core of both reductions: rewrites p * base^d * p^-1 where
// base = p q p^-1 via the left minimal polynomial of base.  Each entry of the
// result pairs the exponent j < d with the coefficient of p q^j p^-1; a k = 1
// relation folds the whole power into the single exponent-0 coefficient.
std::vector<std::pair<int, FieldElem>> power_relation(const SubfieldCtx& ctx,
                                                      const AlgebraElem& base, int d) {
  const UPoly m = left_minpoly(ctx, base);
  const int k = m.degree();
  if (k > d) {
    fail(Err::DegreeTooLarge, "conjugate has left degree " + std::to_string(k) +
                                  " over the subfield, above the exponent " + std::to_string(d));
  }
  std::vector<std::pair<int, FieldElem>> out;
  if (k == 1) {
    out.emplace_back(0, coeff_power(-m.coeff(0), d));
    return out;
  }
  // Multiply the degree-k relation by base^(d-k): coefficients shift up by
  // d - k, the freed low positions are zero, and the monic top term becomes
  // base^d, which the remaining terms are solved for with a sign flip.
  for (int j = d - k; j < d; ++j) {
    FieldElem c = -m.coeff(j - (d - k));
    if (!c.is_zero()) out.emplace_back(j, std::move(c));
  }
  return out;
}

}  // namespace

FormalSum::FormalSum(FieldCtx coeff_ctx, int alphabet)
    : ctx_(std::move(coeff_ctx)), alphabet_(alphabet) {
  if (alphabet_ < 1 || alphabet_ > 9) {
    fail(Err::ValidationError, "alphabet size must be between 1 and 9");
  }
}

void FormalSum::add(const Word& w, const FieldElem& c) {
  if (w.alphabet != alphabet_) {
    fail(Err::AlphabetMismatch, "word over " + std::to_string(w.alphabet) +
                                    " letters added to a sum over " + std::to_string(alphabet_));
  }
  if (!(c.ctx() == ctx_)) fail(Err::ContextMismatch, "coefficient from a different field");
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(w, c);
  if (!fresh) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void FormalSum::add_scaled(const FormalSum& o, const FieldElem& c) {
  if (o.alphabet_ != alphabet_) {
    fail(Err::AlphabetMismatch, "sums over different alphabets");
  }
  for (const auto& [w, coeff] : o.terms_) add(w, coeff * c);
}

std::optional<Word> FormalSum::greatest() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first;
}

std::string FormalSum::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += "(" + it->second.str() + ") * " + it->first.str();
  }
  return out;
}

AlgebraElem eval_word(const std::vector<AlgebraElem>& gens, const Word& w) {
  if (gens.empty()) fail(Err::ValidationError, "need at least one generator");
  if (static_cast<int>(gens.size()) != w.alphabet) {
    fail(Err::ValidationError, "word over alphabet of " + std::to_string(w.alphabet) +
                                   " letters but " + std::to_string(gens.size()) +
                                   " generators supplied");
  }
  AlgebraElem acc = AlgebraElem::unit(gens.front().alg());
  for (int letter : w.letters) acc = acc * gens[static_cast<std::size_t>(letter - 1)];
  return acc;
}

AlgebraElem eval_formal_sum(const SubfieldCtx& ctx, const std::vector<AlgebraElem>& gens,
                            const FormalSum& s) {
  require_gens(ctx, gens);
  if (!(s.coeff_ctx() == ctx.k_ctx)) {
    fail(Err::ContextMismatch, "sum coefficients from a different field than the subfield");
  }
  AlgebraElem acc(ctx.alg);
  for (const auto& [w, c] : s.terms()) acc = acc + embed_k(ctx, c) * eval_word(gens, w);
  return acc;
}

FormalSum reduce_power_case(const SubfieldCtx& ctx, const std::vector<AlgebraElem>& gens,
                            const Word& w, const PowerSplit& decomp) {
  require_gens_for_word(ctx, gens, w);
  const int d = decomp.d;
  if (d < 2) fail(Err::ValidationError, "power exponent must be >= 2");
  if (decomp.u.is_empty()) fail(Err::ValidationError, "repeated factor must be nonempty");
  Word rebuilt = decomp.v1;
  for (int i = 0; i < d; ++i) rebuilt = rebuilt + decomp.u;
  rebuilt = rebuilt + decomp.v2;
  if (!(rebuilt == w)) fail(Err::ValidationError, "power split does not reassemble to the word");

  const AlgebraElem p = eval_word(gens, decomp.v1);
  const auto pinv = alg_inverse(p);
  if (!pinv) fail(Err::NotInvertible, "prefix value " + p.str() + " has no inverse");
  const AlgebraElem conj = p * eval_word(gens, decomp.u) * *pinv;

  FormalSum out(ctx.k_ctx, w.alphabet);
  for (const auto& [j, c] : power_relation(ctx, conj, d)) {
    Word term = decomp.v1;
    for (int i = 0; i < j; ++i) term = term + decomp.u;
    out.add(term + decomp.v2, c);
  }
  return out;
}

FormalSum reduce_shirshov_case(const SubfieldCtx& ctx, const std::vector<AlgebraElem>& gens,
                               const Word& w, const ShirshovSplit& decomp, int d) {
  require_gens_for_word(ctx, gens, w);
  if (d < 1) fail(Err::ValidationError, "need d >= 1");
  if (static_cast<int>(decomp.parts.size()) != d) {
    fail(Err::ValidationError, "split has " + std::to_string(decomp.parts.size()) +
                                   " parts, expected " + std::to_string(d));
  }
  Word rebuilt = decomp.v1;
  for (const Word& part : decomp.parts) {
    if (part.is_empty()) fail(Err::ValidationError, "empty part in split");
    rebuilt = rebuilt + part;
  }
  rebuilt = rebuilt + decomp.v2;
  if (!(rebuilt == w)) fail(Err::ValidationError, "split does not reassemble to the word");

  FormalSum out(ctx.k_ctx, w.alphabet);
  const FieldElem one = FieldElem::one(ctx.k_ctx);
  if (d == 1) {
    out.add(w, one);
    return out;
  }

  const AlgebraElem p = eval_word(gens, decomp.v1);
  const auto pinv = alg_inverse(p);
  if (!pinv) fail(Err::NotInvertible, "prefix value " + p.str() + " has no inverse");

  const PolarizationTerms expansion = polarization_terms(d);

  // The product of the parts in order equals the signed sum of the d-th
  // powers of the subset sums minus the nontrivially permuted products.
  // Each power term is reduced through the left minimal polynomial of its
  // conjugated subset sum, then the surviving powers are expanded back into
  // words: the j-th power of a subset sum is the sum over all length-j
  // sequences from the subset of the corresponding part products.
  for (const auto& [members, sign_value] : expansion.subsets) {
    AlgebraElem q(ctx.alg);
    for (int idx : members) {
      q = q + eval_word(gens, decomp.parts[static_cast<std::size_t>(idx - 1)]);
    }
    const FieldElem sign = sign_value > 0 ? one : -one;
    const AlgebraElem conj = p * q * *pinv;
    for (const auto& [j, c] : power_relation(ctx, conj, d)) {
      const FieldElem scaled = c * sign;
      const int t = static_cast<int>(members.size());
      long long count = 1;
      for (int i = 0; i < j; ++i) count *= t;
      std::vector<int> digits(static_cast<std::size_t>(j), 0);
      for (long long e = 0; e < count; ++e) {
        long long rest = e;
        for (int i = j - 1; i >= 0; --i) {
          digits[static_cast<std::size_t>(i)] = static_cast<int>(rest % t);
          rest /= t;
        }
        Word term = decomp.v1;
        for (int i = 0; i < j; ++i) {
          const int part_idx = members[static_cast<std::size_t>(digits[static_cast<std::size_t>(i)])];
          term = term + decomp.parts[static_cast<std::size_t>(part_idx - 1)];
        }
        out.add(term + decomp.v2, scaled);
      }
    }
  }
  for (const auto& perm : expansion.permutations) {
    Word term = decomp.v1;
    for (int idx : perm) term = term + decomp.parts[static_cast<std::size_t>(idx - 1)];
    out.add(term + decomp.v2, -one);
  }
  return out;
}

FormalSum rewrite_word(const SubfieldCtx& ctx, const std::vector<AlgebraElem>& gens,
                       const Word& w, int d, int length_cap, int step_cap) {
  require_gens_for_word(ctx, gens, w);
  if (d < 2) fail(Err::ValidationError, "need d >= 2");
  if (length_cap < 0) fail(Err::ValidationError, "length cap must be >= 0");
  if (step_cap < 0) fail(Err::ValidationError, "step budget must be >= 0");

  FormalSum sum(ctx.k_ctx, w.alphabet);
  sum.add(w, FieldElem::one(ctx.k_ctx));
  int steps = 0;
  for (;;) {
    // Degree-lex order sorts by length first, so the greatest support word is
    // over the cap exactly when some support word is.
    const auto& terms = sum.terms();
    auto top = terms.rbegin();
    if (top == terms.rend() || top->first.length() <= length_cap) return sum;
    if (steps >= step_cap) {
      fail(Err::StepBudgetExceeded, "step budget " + std::to_string(step_cap) +
                                        " exhausted with " + std::to_string(sum.size()) +
                                        " terms pending");
    }
    ++steps;
    const Word target = top->first;
    const FieldElem coeff = top->second;
    const auto decomp = bell_decompose(target, d);
    if (!decomp) {
      fail(Err::ValidationError, "word " + target.str() + " of length " +
                                     std::to_string(target.length()) +
                                     " admits no decomposition; raise the length cap");
    }
    const FormalSum reduced = decomp->kind == BellDecomposition::Kind::Power
                                  ? reduce_power_case(ctx, gens, target, *decomp->power)
                                  : reduce_shirshov_case(ctx, gens, target, *decomp->shirshov, d);
    sum.add(target, -coeff);
    sum.add_scaled(reduced, coeff);
  }
}

int verify_span_dim(const SubfieldCtx& ctx, const std::vector<AlgebraElem>& gens, int max_len) {
  require_gens(ctx, gens);
  if (max_len < 0) fail(Err::ValidationError, "max_len must be >= 0");
  const int m = static_cast<int>(gens.size());
  if (m > 9) fail(Err::ValidationError, "at most 9 generators supported");

  long long total = 0;
  long long pow = 1;
  for (int len = 0; len <= max_len; ++len) {
    total += pow;
    pow *= m;
    if (total > 200000) fail(Err::ValidationError, "word count beyond desk scale");
  }

  const int n = ctx.k_degree;
  Matrix coords(ctx.k_ctx, n, static_cast<int>(total));
  int col = 0;
  std::vector<int> letters;
  for (int len = 0; len <= max_len; ++len) {
    long long count = 1;
    for (int i = 0; i < len; ++i) count *= m;
    letters.assign(static_cast<std::size_t>(len), 1);
    for (long long e = 0; e < count; ++e, ++col) {
      long long rest = e;
      for (int i = len - 1; i >= 0; --i) {
        letters[static_cast<std::size_t>(i)] = static_cast<int>(rest % m) + 1;
        rest /= m;
      }
      const AlgebraElem value = eval_word(gens, Word::of(m, letters));
      const auto vec = k_coordinates(ctx, value, Side::Left);
      for (int r = 0; r < n; ++r) coords.at(r, col) = vec[static_cast<std::size_t>(r)];
    }
  }
  return rank(coords);
}

}  // namespace divalg
