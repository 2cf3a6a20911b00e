#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <utility>
#include <vector>

#include "divalg/algebra.hpp"
#include "divalg/identities.hpp"
#include "divalg/linalg.hpp"
#include "divalg/rewrite.hpp"
#include "divalg/subfield.hpp"
#include "divalg/words.hpp"

using namespace divalg;

namespace {

const FieldCtx Q = FieldCtx::rational();

AlgebraPtr hamilton() {
  return quaternion_algebra(Q, FieldElem::from_int(Q, -1), FieldElem::from_int(Q, -1));
}

FieldElem kelem(const FieldCtx& k, std::int64_t c0, std::int64_t c1) {
  return FieldElem::from_rep(k, UPoly::of_ints(k.base(), {c0, c1}));
}

AlgebraElem from_matrix(const AlgebraPtr& matalg, const Matrix& M) {
  std::vector<FieldElem> coords;
  for (int r = 0; r < M.rows(); ++r)
    for (int c = 0; c < M.cols(); ++c) coords.push_back(M.at(r, c));
  return AlgebraElem::from_coords(matalg, std::move(coords));
}

Err thrown_kind(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& err) {
    return err.kind();
  }
  FAIL("expected an exception");
  return Err::ValidationError;
}

Word wd(int m, std::initializer_list<int> letters) { return Word::of(m, std::vector<int>(letters)); }

Word random_word(int m, int len, Sampler& rng) {
  std::vector<int> letters;
  letters.reserve(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) letters.push_back(rng.uniform_int(1, m));
  return Word::of(m, letters);
}

// Quaternion setting used throughout: K = Q(i) inside the rational
// quaternions, generators (i, j) for the two-letter alphabet.
struct QuatSetting {
  AlgebraPtr H;
  SubfieldCtx ctx;
  std::vector<AlgebraElem> gens;
};

QuatSetting quat_setting() {
  AlgebraPtr H = hamilton();
  SubfieldCtx ctx = build_subfield(H, AlgebraElem::basis(H, 1));
  std::vector<AlgebraElem> gens{AlgebraElem::basis(H, 1), AlgebraElem::basis(H, 2)};
  return {std::move(H), std::move(ctx), std::move(gens)};
}

// M2(Q) with the rotation matrix generating K = Q(rot); second generator is
// the singular projection e11, handy for non-invertible-prefix cases.
struct MatrixSetting {
  AlgebraPtr M2;
  SubfieldCtx ctx;
  std::vector<AlgebraElem> gens;
};

MatrixSetting matrix_setting() {
  AlgebraPtr M2 = matrix_algebra(Q, 2);
  AlgebraElem rot = AlgebraElem::from_int_coords(M2, {0, -1, 1, 0});
  SubfieldCtx ctx = build_subfield(M2, rot);
  std::vector<AlgebraElem> gens{rot, AlgebraElem::basis(M2, 0)};
  return {std::move(M2), std::move(ctx), std::move(gens)};
}

}  // namespace

TEST_CASE("formal sums collect like terms in degree-lex order") {
  const auto S = quat_setting();
  const FieldCtx& K = S.ctx.k_ctx;
  FormalSum s(K, 2);
  CHECK(s.is_zero());
  CHECK(s.size() == 0);
  CHECK_FALSE(s.greatest().has_value());
  CHECK(s.str() == "0");

  s.add(wd(2, {1}), kelem(K, 1, 0));
  s.add(wd(2, {2}), kelem(K, 0, 1));
  s.add(Word::empty(2), kelem(K, 3, 0));
  CHECK(s.size() == 3);
  REQUIRE(s.greatest().has_value());
  CHECK(*s.greatest() == wd(2, {1}));

  // Ascending map order: eps < x2 < x1 (x1 is the greatest letter).
  std::vector<Word> keys;
  for (const auto& [w, c] : s.terms()) keys.push_back(w);
  REQUIRE(keys.size() == 3);
  CHECK(keys[0] == Word::empty(2));
  CHECK(keys[1] == wd(2, {2}));
  CHECK(keys[2] == wd(2, {1}));
  CHECK(s.str() == "(1) * x1 + (u) * x2 + (3) * eps");

  // Like terms collect; exact cancellation erases the term.
  s.add(wd(2, {1}), kelem(K, 2, 0));
  CHECK(s.terms().at(wd(2, {1})) == kelem(K, 3, 0));
  s.add(wd(2, {1}), kelem(K, -3, 0));
  CHECK(s.size() == 2);
  CHECK(*s.greatest() == wd(2, {2}));

  // Adding zero is a no-op.
  s.add(wd(2, {1, 1}), FieldElem::zero(K));
  CHECK(s.size() == 2);

  FormalSum t(K, 2);
  t.add(wd(2, {2}), kelem(K, 0, -1));
  t.add(wd(2, {2, 2}), kelem(K, 1, 0));
  s.add_scaled(t, kelem(K, 1, 0));
  CHECK(s.size() == 2);  // the x2 terms cancel: u + (-u) = 0
  CHECK(s.terms().at(wd(2, {2, 2})) == kelem(K, 1, 0));
  CHECK(s.terms().count(wd(2, {2})) == 0);

  CHECK(thrown_kind([&] { s.add(wd(3, {1}), kelem(K, 1, 0)); }) == Err::AlphabetMismatch);
  CHECK(thrown_kind([&] { s.add(wd(2, {1}), FieldElem::one(Q)); }) == Err::ContextMismatch);
  FormalSum other(K, 3);
  CHECK(thrown_kind([&] { s.add_scaled(other, kelem(K, 1, 0)); }) == Err::AlphabetMismatch);
  CHECK(thrown_kind([] { FormalSum bad(FieldCtx::rational(), 0); }) == Err::ValidationError);
  CHECK(thrown_kind([] { FormalSum bad(FieldCtx::rational(), 10); }) == Err::ValidationError);
}

TEST_CASE("evaluating words and formal sums in the quaternions") {
  const auto S = quat_setting();
  const FieldCtx& K = S.ctx.k_ctx;
  const AlgebraPtr& H = S.H;
  const AlgebraElem i = AlgebraElem::basis(H, 1);
  const AlgebraElem j = AlgebraElem::basis(H, 2);
  const AlgebraElem k = AlgebraElem::basis(H, 3);

  CHECK(eval_word(S.gens, Word::empty(2)) == AlgebraElem::unit(H));
  CHECK(eval_word(S.gens, wd(2, {1, 2})) == k);
  CHECK(eval_word(S.gens, wd(2, {2, 1})) == AlgebraElem::from_int_coords(H, {0, 0, 0, -1}));
  CHECK(eval_word(S.gens, wd(2, {1, 1, 2, 2})) == AlgebraElem::unit(H));

  // Single-generator alphabet.
  const std::vector<AlgebraElem> just_i{i};
  CHECK(eval_word(just_i, wd(1, {1, 1})) == AlgebraElem::from_int_coords(H, {-1, 0, 0, 0}));

  FormalSum s(K, 2);
  s.add(Word::empty(2), kelem(K, 2, 0));
  s.add(wd(2, {2}), kelem(K, 0, 1));  // embeds to i, so the term is i*j = k
  CHECK(eval_formal_sum(S.ctx, S.gens, s) == AlgebraElem::from_int_coords(H, {2, 0, 0, 1}));

  CHECK(thrown_kind([&] { (void)eval_word(S.gens, wd(3, {1})); }) == Err::ValidationError);
  CHECK(thrown_kind([&] { (void)eval_word(std::vector<AlgebraElem>{}, wd(1, {1})); }) ==
        Err::ValidationError);
  FormalSum wrong_field(Q, 2);
  wrong_field.add(Word::empty(2), FieldElem::one(Q));
  CHECK(thrown_kind([&] { (void)eval_formal_sum(S.ctx, S.gens, wrong_field); }) ==
        Err::ContextMismatch);
}

TEST_CASE("power reductions fold or pad through the left minimal polynomial") {
  const auto S = quat_setting();
  const FieldCtx& K = S.ctx.k_ctx;

  // x1 x1: the base i lies in K, so the square folds to the constant i^2.
  {
    const Word w = wd(2, {1, 1});
    const auto split = power_factorization(w, 2);
    REQUIRE(split.has_value());
    const FormalSum out = reduce_power_case(S.ctx, S.gens, w, *split);
    REQUIRE(out.size() == 1);
    CHECK(out.terms().at(Word::empty(2)) == kelem(K, -1, 0));
    CHECK(eval_formal_sum(S.ctx, S.gens, out) == eval_word(S.gens, w));
  }

  // x2 x2: j has left degree 2 with relation t^2 + 1, no padding needed.
  {
    const Word w = wd(2, {2, 2});
    const auto split = power_factorization(w, 2);
    REQUIRE(split.has_value());
    const FormalSum out = reduce_power_case(S.ctx, S.gens, w, *split);
    REQUIRE(out.size() == 1);
    CHECK(out.terms().at(Word::empty(2)) == kelem(K, -1, 0));
    CHECK(eval_formal_sum(S.ctx, S.gens, out) == eval_word(S.gens, w));
  }

  // x1 x2 x2 x1: the conjugated base i j i^-1 = -j again has t^2 + 1, and
  // the surviving term keeps the flanks: x1 x1 with coefficient -1.
  {
    const Word w = wd(2, {1, 2, 2, 1});
    const auto split = power_factorization(w, 2);
    REQUIRE(split.has_value());
    CHECK(split->v1 == wd(2, {1}));
    CHECK(split->u == wd(2, {2}));
    const FormalSum out = reduce_power_case(S.ctx, S.gens, w, *split);
    REQUIRE(out.size() == 1);
    CHECK(out.terms().at(wd(2, {1, 1})) == kelem(K, -1, 0));
    CHECK(eval_formal_sum(S.ctx, S.gens, out) == eval_word(S.gens, w));
  }

  // x2 x1 x1 with flanking prefix x2: j i j^-1 = -i lies in K, folding to
  // (-i)^2 = -1 on the leftover word x2.
  {
    const Word w = wd(2, {2, 1, 1});
    const auto split = power_factorization(w, 2);
    REQUIRE(split.has_value());
    CHECK(split->v1 == wd(2, {2}));
    const FormalSum out = reduce_power_case(S.ctx, S.gens, w, *split);
    REQUIRE(out.size() == 1);
    CHECK(out.terms().at(wd(2, {2})) == kelem(K, -1, 0));
    CHECK(eval_formal_sum(S.ctx, S.gens, out) == eval_word(S.gens, w));
  }

  // Cube of i folds with a genuinely non-rational coefficient: i^3 = -i.
  {
    const Word w = wd(2, {1, 1, 1});
    const auto split = power_factorization(w, 3);
    REQUIRE(split.has_value());
    const FormalSum out = reduce_power_case(S.ctx, S.gens, w, *split);
    REQUIRE(out.size() == 1);
    CHECK(out.terms().at(Word::empty(2)) == kelem(K, 0, -1));
    CHECK(eval_formal_sum(S.ctx, S.gens, out) == eval_word(S.gens, w));
  }

  // Cube of j against a degree-2 relation: the padded positions drop out and
  // only the exponent-1 term survives, j^3 = -j.
  {
    const Word w = wd(2, {2, 2, 2});
    const auto split = power_factorization(w, 3);
    REQUIRE(split.has_value());
    const FormalSum out = reduce_power_case(S.ctx, S.gens, w, *split);
    REQUIRE(out.size() == 1);
    CHECK(out.terms().at(wd(2, {2})) == kelem(K, -1, 0));
    CHECK(eval_formal_sum(S.ctx, S.gens, out) == eval_word(S.gens, w));
  }
}

TEST_CASE("power reduction validation and failure modes") {
  const auto S = quat_setting();

  // Hand-built splits that do not reassemble, or with a trivial exponent.
  PowerSplit bad;
  bad.v1 = Word::empty(2);
  bad.u = wd(2, {1});
  bad.v2 = Word::empty(2);
  bad.d = 1;
  CHECK(thrown_kind([&] { (void)reduce_power_case(S.ctx, S.gens, wd(2, {1}), bad); }) ==
        Err::ValidationError);
  bad.d = 2;
  CHECK(thrown_kind([&] { (void)reduce_power_case(S.ctx, S.gens, wd(2, {1, 2}), bad); }) ==
        Err::ValidationError);
  bad.u = Word::empty(2);
  CHECK(thrown_kind([&] { (void)reduce_power_case(S.ctx, S.gens, Word::empty(2), bad); }) ==
        Err::ValidationError);

  // Generator count must match the alphabet.
  const auto ok = power_factorization(wd(2, {1, 1}), 2);
  REQUIRE(ok.has_value());
  CHECK(thrown_kind([&] {
          (void)reduce_power_case(S.ctx, std::vector<AlgebraElem>{S.gens[0]}, wd(2, {1, 1}), *ok);
        }) == Err::ValidationError);

  // Singular prefix: in M2 the projection e11 has no inverse.
  const auto M = matrix_setting();
  const Word w = wd(2, {2, 1, 1});
  const auto split = power_factorization(w, 2);
  REQUIRE(split.has_value());
  REQUIRE(split->v1 == wd(2, {2}));
  CHECK(thrown_kind([&] { (void)reduce_power_case(M.ctx, M.gens, w, *split); }) ==
        Err::NotInvertible);

  // In M3 over Q(2^(1/3)) a generic diagonal has left degree 3, above d = 2.
  const AlgebraPtr M3 = matrix_algebra(Q, 3);
  const AlgebraElem gen3 = from_matrix(M3, companion(UPoly::of_ints(Q, {-2, 0, 0, 1})));
  const SubfieldCtx ctx3 = build_subfield(M3, gen3);
  const AlgebraElem diag = AlgebraElem::from_int_coords(M3, {1, 0, 0, 0, 2, 0, 0, 0, 3});
  REQUIRE(left_minpoly(ctx3, diag).degree() == 3);
  const std::vector<AlgebraElem> gens3{gen3, diag};
  const auto sq = power_factorization(wd(2, {2, 2}), 2);
  REQUIRE(sq.has_value());
  CHECK(thrown_kind([&] { (void)reduce_power_case(ctx3, gens3, wd(2, {2, 2}), *sq); }) ==
        Err::DegreeTooLarge);
  // The same square with exponent bound 3 reduces fine.
  const auto cube = power_factorization(wd(2, {2, 2, 2}), 3);
  REQUIRE(cube.has_value());
  const FormalSum out3 = reduce_power_case(ctx3, gens3, wd(2, {2, 2, 2}), *cube);
  CHECK(eval_formal_sum(ctx3, gens3, out3) == eval_word(gens3, wd(2, {2, 2, 2})));
}

TEST_CASE("random power splits evaluate exactly") {
  const auto S = quat_setting();
  Sampler rng(97531);
  int found2 = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Word w = random_word(2, 4 + rng.uniform_int(0, 4), rng);
    const auto split = power_factorization(w, 2);
    if (!split) continue;
    ++found2;
    const FormalSum out = reduce_power_case(S.ctx, S.gens, w, *split);
    CHECK(eval_formal_sum(S.ctx, S.gens, out) == eval_word(S.gens, w));
    if (const auto top = out.greatest()) CHECK(top->length() < w.length());
  }
  CHECK(found2 > 200);

  int found3 = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Word w = random_word(2, 6 + rng.uniform_int(0, 4), rng);
    const auto split = power_factorization(w, 3);
    if (!split) continue;
    ++found3;
    const FormalSum out = reduce_power_case(S.ctx, S.gens, w, *split);
    CHECK(eval_formal_sum(S.ctx, S.gens, out) == eval_word(S.gens, w));
  }
  CHECK(found3 > 40);
}

TEST_CASE("substitution identity rewrites the highest word of a block") {
  const auto S = quat_setting();
  const FieldCtx& K = S.ctx.k_ctx;
  const AlgebraElem i = S.gens[0];
  const AlgebraElem j = S.gens[1];

  // The raw substitution identity behind the reduction, checked directly:
  // i*j = (i+j)^2 - i^2 - j^2 - j*i.
  CHECK(i * j == (i + j) * (i + j) - i * i - j * j - j * i);

  // x1 x2: the three subset powers cancel the constant exactly, leaving the
  // permuted word: i*j = -(j*i), the quaternion anticommutation relation.
  {
    const Word w = wd(2, {1, 2});
    const auto split = shirshov_split(w, 2);
    REQUIRE(split.has_value());
    const FormalSum out = reduce_shirshov_case(S.ctx, S.gens, w, *split, 2);
    REQUIRE(out.size() == 1);
    CHECK(out.terms().at(wd(2, {2, 1})) == kelem(K, -1, 0));
    CHECK(eval_formal_sum(S.ctx, S.gens, out) == eval_word(S.gens, w));
  }

  // x1 x2 x1 splits into parts (x1, x2 x1); everything cancels except the
  // permuted word x2 x1 x1 with coefficient -1.
  {
    const Word w = wd(2, {1, 2, 1});
    const auto split = shirshov_split(w, 2);
    REQUIRE(split.has_value());
    REQUIRE(split->parts.size() == 2);
    CHECK(split->parts[0] == wd(2, {1}));
    CHECK(split->parts[1] == wd(2, {2, 1}));
    const FormalSum out = reduce_shirshov_case(S.ctx, S.gens, w, *split, 2);
    REQUIRE(out.size() == 1);
    CHECK(out.terms().at(wd(2, {2, 1, 1})) == kelem(K, -1, 0));
    CHECK(eval_formal_sum(S.ctx, S.gens, out) == eval_word(S.gens, w));
  }

  // Parts (x1 x2, x2 x1) evaluate to k and -k: the pair subset sums to zero,
  // its minimal polynomial is plain t, and the term drops out cleanly.
  {
    const Word w = wd(2, {1, 2, 2, 1});
    ShirshovSplit split;
    split.v1 = Word::empty(2);
    split.parts = {wd(2, {1, 2}), wd(2, {2, 1})};
    split.v2 = Word::empty(2);
    const FormalSum out = reduce_shirshov_case(S.ctx, S.gens, w, split, 2);
    REQUIRE(out.size() == 2);
    CHECK(out.terms().at(Word::empty(2)) == kelem(K, 2, 0));
    CHECK(out.terms().at(wd(2, {2, 1, 1, 2})) == kelem(K, -1, 0));
    CHECK(eval_formal_sum(S.ctx, S.gens, out) == eval_word(S.gens, w));
  }

  // d = 1 is the identity reduction.
  {
    ShirshovSplit trivial;
    trivial.v1 = Word::empty(2);
    trivial.parts = {wd(2, {1})};
    trivial.v2 = Word::empty(2);
    const FormalSum out = reduce_shirshov_case(S.ctx, S.gens, wd(2, {1}), trivial, 1);
    REQUIRE(out.size() == 1);
    CHECK(out.terms().at(wd(2, {1})) == kelem(K, 1, 0));
  }

  // Same reduction carried out in M2(Q) over the rotation subfield.
  {
    const auto M = matrix_setting();
    const Word w = wd(2, {1, 2, 1});
    const auto split = shirshov_split(w, 2);
    REQUIRE(split.has_value());
    const FormalSum out = reduce_shirshov_case(M.ctx, M.gens, w, *split, 2);
    CHECK(eval_formal_sum(M.ctx, M.gens, out) == eval_word(M.gens, w));
  }
}

TEST_CASE("substitution reduction validation") {
  const auto S = quat_setting();

  ShirshovSplit split;
  split.v1 = Word::empty(2);
  split.parts = {wd(2, {1}), wd(2, {2})};
  split.v2 = Word::empty(2);
  // Part count disagrees with d.
  CHECK(thrown_kind([&] { (void)reduce_shirshov_case(S.ctx, S.gens, wd(2, {1, 2}), split, 3); }) ==
        Err::ValidationError);
  // Reassembly mismatch.
  CHECK(thrown_kind([&] { (void)reduce_shirshov_case(S.ctx, S.gens, wd(2, {2, 1}), split, 2); }) ==
        Err::ValidationError);
  // Empty part.
  ShirshovSplit holey;
  holey.v1 = Word::empty(2);
  holey.parts = {wd(2, {1}), Word::empty(2)};
  holey.v2 = wd(2, {2});
  CHECK(thrown_kind([&] { (void)reduce_shirshov_case(S.ctx, S.gens, wd(2, {1, 2}), holey, 2); }) ==
        Err::ValidationError);
  // d must be positive.
  CHECK(thrown_kind([&] { (void)reduce_shirshov_case(S.ctx, S.gens, wd(2, {1, 2}), split, 0); }) ==
        Err::ValidationError);

  // Singular prefix in M2.
  const auto M = matrix_setting();
  ShirshovSplit prefixed;
  prefixed.v1 = wd(2, {2});
  prefixed.parts = {wd(2, {1}), wd(2, {2})};
  prefixed.v2 = Word::empty(2);
  CHECK(thrown_kind([&] {
          (void)reduce_shirshov_case(M.ctx, M.gens, wd(2, {2, 1, 2}), prefixed, 2);
        }) == Err::NotInvertible);

  // Generators from a different algebra.
  const auto other = quat_setting();
  CHECK(thrown_kind([&] {
          (void)reduce_shirshov_case(S.ctx, other.gens, wd(2, {1, 2}), split, 2);
        }) == Err::AlgebraMismatch);
}

TEST_CASE("random block splits evaluate exactly") {
  const auto S = quat_setting();
  Sampler rng(8642);
  int found2 = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const Word w = random_word(2, 3 + rng.uniform_int(0, 4), rng);
    const auto split = shirshov_split(w, 2);
    if (!split) continue;
    ++found2;
    const FormalSum out = reduce_shirshov_case(S.ctx, S.gens, w, *split, 2);
    CHECK(eval_formal_sum(S.ctx, S.gens, out) == eval_word(S.gens, w));
  }
  CHECK(found2 > 60);

  int found3 = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Word w = random_word(2, 6 + rng.uniform_int(0, 3), rng);
    const auto split = shirshov_split(w, 3);
    if (!split) continue;
    ++found3;
    const FormalSum out = reduce_shirshov_case(S.ctx, S.gens, w, *split, 3);
    CHECK(eval_formal_sum(S.ctx, S.gens, out) == eval_word(S.gens, w));
  }
  CHECK(found3 > 10);
}

TEST_CASE("the driver reduces every word to the length cap") {
  const auto S = quat_setting();
  const FieldCtx& K = S.ctx.k_ctx;

  // (x1 x2)^2 is a single power step: (i j)^2 = k^2 = -1.
  {
    const FormalSum out = rewrite_word(S.ctx, S.gens, wd(2, {1, 2, 1, 2}), 2, 2, 100);
    REQUIRE(out.size() == 1);
    CHECK(out.terms().at(Word::empty(2)) == kelem(K, -1, 0));
  }

  // x1 x2 x1 needs a block step and then a power fold: i j i = j.
  {
    const FormalSum out = rewrite_word(S.ctx, S.gens, wd(2, {1, 2, 1}), 2, 1, 100);
    REQUIRE(out.size() == 1);
    CHECK(out.terms().at(wd(2, {2})) == kelem(K, 1, 0));
    CHECK(eval_formal_sum(S.ctx, S.gens, out) == eval_word(S.gens, wd(2, {1, 2, 1})));
  }

  // Words at or below the cap pass through untouched.
  {
    const FormalSum out = rewrite_word(S.ctx, S.gens, wd(2, {2, 1}), 2, 2, 100);
    REQUIRE(out.size() == 1);
    CHECK(out.terms().at(wd(2, {2, 1})) == kelem(K, 1, 0));
  }

  // Cap 0 flattens squares all the way to constants.
  {
    const FormalSum out = rewrite_word(S.ctx, S.gens, wd(2, {1, 1}), 2, 0, 100);
    REQUIRE(out.size() == 1);
    CHECK(out.terms().at(Word::empty(2)) == kelem(K, -1, 0));
  }
}

TEST_CASE("driver random sweep stays exact") {
  const auto S = quat_setting();
  Sampler rng(192837);
  for (int trial = 0; trial < 200; ++trial) {
    const Word w = random_word(2, 1 + rng.uniform_int(0, 7), rng);
    const FormalSum out = rewrite_word(S.ctx, S.gens, w, 2, 2, 100000);
    CHECK(eval_formal_sum(S.ctx, S.gens, out) == eval_word(S.gens, w));
    for (const auto& [word, c] : out.terms()) {
      CHECK(word.length() <= 2);
      CHECK_FALSE(c.is_zero());
    }
  }
}

TEST_CASE("driver guards: budget, cap fit, and degree") {
  const auto S = quat_setting();

  // x1 x2 x1 takes two steps, so a budget of one runs out.
  CHECK(thrown_kind([&] { (void)rewrite_word(S.ctx, S.gens, wd(2, {1, 2, 1}), 2, 1, 1); }) ==
        Err::StepBudgetExceeded);
  // A zero budget cannot even start on an over-cap word.
  CHECK(thrown_kind([&] { (void)rewrite_word(S.ctx, S.gens, wd(2, {1, 1}), 2, 0, 0); }) ==
        Err::StepBudgetExceeded);
  // ... but is fine when nothing needs doing.
  CHECK(rewrite_word(S.ctx, S.gens, wd(2, {1, 1}), 2, 2, 0).size() == 1);

  // x2 x1 has no square and no dominant block, so a cap of 1 is unreachable.
  CHECK(thrown_kind([&] { (void)rewrite_word(S.ctx, S.gens, wd(2, {2, 1}), 2, 1, 100); }) ==
        Err::ValidationError);

  CHECK(thrown_kind([&] { (void)rewrite_word(S.ctx, S.gens, wd(2, {1, 1}), 1, 0, 10); }) ==
        Err::ValidationError);
  CHECK(thrown_kind([&] { (void)rewrite_word(S.ctx, S.gens, wd(2, {1, 1}), 2, -1, 10); }) ==
        Err::ValidationError);
  CHECK(thrown_kind([&] { (void)rewrite_word(S.ctx, S.gens, wd(2, {1, 1}), 2, 0, -1); }) ==
        Err::ValidationError);

  // Degree overflow propagates out of the driver: in M3 the diagonal's left
  // degree 3 exceeds the exponent bound 2.
  const AlgebraPtr M3 = matrix_algebra(Q, 3);
  const AlgebraElem gen3 = from_matrix(M3, companion(UPoly::of_ints(Q, {-2, 0, 0, 1})));
  const SubfieldCtx ctx3 = build_subfield(M3, gen3);
  const AlgebraElem diag = AlgebraElem::from_int_coords(M3, {1, 0, 0, 0, 2, 0, 0, 0, 3});
  const std::vector<AlgebraElem> gens3{gen3, diag};
  CHECK(thrown_kind([&] { (void)rewrite_word(ctx3, gens3, wd(2, {2, 2}), 2, 1, 10); }) ==
        Err::DegreeTooLarge);
}

TEST_CASE("span dimensions over the subfield") {
  const auto S = quat_setting();

  CHECK(verify_span_dim(S.ctx, S.gens, 0) == 1);
  CHECK(verify_span_dim(S.ctx, S.gens, 1) == 2);
  CHECK(verify_span_dim(S.ctx, S.gens, 4) == 2);

  int prev = 0;
  for (int len = 0; len <= 5; ++len) {
    const int dim = verify_span_dim(S.ctx, S.gens, len);
    CHECK(dim >= prev);
    CHECK(dim <= S.ctx.k_degree);
    prev = dim;
  }

  // Words in i alone stay inside K, a one-dimensional left span.
  const std::vector<AlgebraElem> just_i{S.gens[0]};
  CHECK(verify_span_dim(S.ctx, just_i, 3) == 1);

  // The rotation/projection pair in M2 already spans at length 1.
  const auto M = matrix_setting();
  CHECK(verify_span_dim(M.ctx, M.gens, 0) == 1);
  CHECK(verify_span_dim(M.ctx, M.gens, 1) == 2);
  CHECK(verify_span_dim(M.ctx, M.gens, 2) == 2);

  CHECK(thrown_kind([&] { (void)verify_span_dim(S.ctx, S.gens, -1); }) == Err::ValidationError);
  CHECK(thrown_kind([&] { (void)verify_span_dim(S.ctx, M.gens, 2); }) == Err::AlgebraMismatch);
  CHECK(thrown_kind([&] { (void)verify_span_dim(S.ctx, S.gens, 20); }) == Err::ValidationError);
}
