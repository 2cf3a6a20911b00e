#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <optional>
#include <vector>

#include "divalg/algebra.hpp"
#include "divalg/error.hpp"
#include "divalg/exactfield.hpp"
#include "divalg/identities.hpp"
#include "divalg/linalg.hpp"
#include "divalg/maxsubfield.hpp"
#include "divalg/rng.hpp"

using namespace divalg;

namespace {

const FieldCtx Q = FieldCtx::rational();

AlgebraPtr hamilton() {
  return quaternion_algebra(Q, FieldElem::from_int(Q, -1), FieldElem::from_int(Q, -1));
}

// Q(sqrt2) as a two-dimensional table algebra on the basis {1, s}, s^2 = 2.
AlgebraPtr root2_algebra() {
  const FieldElem one = FieldElem::one(Q), zero = FieldElem::zero(Q);
  const FieldElem two = FieldElem::from_int(Q, 2);
  std::vector<std::vector<std::vector<FieldElem>>> tab = {
      {{one, zero}, {zero, one}},
      {{zero, one}, {two, zero}},
  };
  return AlgebraDef::make(Q, 2, {"1", "s"}, tab);
}

// Q(sqrt2, sqrt3) on the basis {1, s, r, q} with s^2 = 2, r^2 = 3, q = sr.
AlgebraPtr biquadratic_algebra() {
  const FieldElem zero = FieldElem::zero(Q);
  std::vector<std::vector<std::vector<FieldElem>>> tab(
      4, std::vector<std::vector<FieldElem>>(4, std::vector<FieldElem>(4, zero)));
  auto set = [&](int i, int j, int k, std::int64_t c) {
    tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
        FieldElem::from_int(Q, c);
  };
  for (int i = 0; i < 4; ++i) {
    set(0, i, i, 1);
    if (i != 0) set(i, 0, i, 1);
  }
  set(1, 1, 0, 2);  // s*s = 2
  set(2, 2, 0, 3);  // r*r = 3
  set(3, 3, 0, 6);  // q*q = 6
  set(1, 2, 3, 1);  // s*r = q
  set(2, 1, 3, 1);
  set(1, 3, 2, 2);  // s*q = 2r
  set(3, 1, 2, 2);
  set(2, 3, 1, 3);  // r*q = 3s
  set(3, 2, 1, 3);
  return AlgebraDef::make(Q, 4, {"1", "s", "r", "q"}, tab);
}

// Q x Q: commutative with zero divisors; the unit is (1, 1).
AlgebraPtr split_pair_algebra() {
  const FieldElem one = FieldElem::one(Q), zero = FieldElem::zero(Q);
  std::vector<std::vector<std::vector<FieldElem>>> tab = {
      {{one, zero}, {zero, zero}},
      {{zero, zero}, {zero, one}},
  };
  const std::vector<FieldElem> unit = {one, one};
  return AlgebraDef::make(Q, 2, {"u", "v"}, tab, &unit);
}

AlgebraPtr scalar_algebra() {
  const FieldElem one = FieldElem::one(Q);
  std::vector<std::vector<std::vector<FieldElem>>> tab = {{{one}}};
  return AlgebraDef::make(Q, 1, {"1"}, tab);
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

}  // namespace

TEST_CASE("maximal subfield generators in quaternions") {
  const AlgebraPtr H = hamilton();
  const AlgebraElem i = AlgebraElem::basis(H, 1);
  const AlgebraElem j = AlgebraElem::basis(H, 2);
  CHECK(is_max_subfield_gen(j));
  CHECK(is_max_subfield_gen(i));
  CHECK(is_max_subfield_gen(i + j));
  CHECK_FALSE(is_max_subfield_gen(AlgebraElem::scalar(H, FieldElem::from_int(Q, 3))));
  CHECK_FALSE(is_max_subfield_gen(AlgebraElem(H)));  // zero: degree 1

  // (2, 3) quaternions are also division; 2k has minimal polynomial t^2 + 24.
  const AlgebraPtr H23 =
      quaternion_algebra(Q, FieldElem::from_int(Q, 2), FieldElem::from_int(Q, 3));
  const AlgebraElem twok =
      AlgebraElem::basis(H23, 3) + AlgebraElem::basis(H23, 3);
  CHECK(is_max_subfield_gen(twok));
  CHECK(minpoly_element(twok) == UPoly::of_ints(Q, {24, 0, 1}));

  // Every noncentral element of small height generates a maximal subfield.
  for (std::int64_t a = -3; a <= 3; ++a)
    for (std::int64_t b = -3; b <= 3; ++b)
      for (std::int64_t c = -3; c <= 3; ++c)
        for (std::int64_t d = -3; d <= 3; ++d) {
          if (b == 0 && c == 0 && d == 0) continue;
          CHECK(is_max_subfield_gen(AlgebraElem::from_int_coords(H, {a, b, c, d})));
        }

  CHECK(thrown_kind([&] { (void)is_max_subfield_gen(AlgebraElem::basis(root2_algebra(), 1)); }) ==
        Err::DimensionNotSquare);
}

TEST_CASE("degree certification filters reducible matrix elements") {
  const AlgebraPtr M2 = matrix_algebra(Q, 2);
  // diag(1, 2): degree 2 but (t-1)(t-2) factors, so F[x] is not a field.
  CHECK_FALSE(is_max_subfield_gen(AlgebraElem::from_int_coords(M2, {1, 0, 0, 2})));
  // Nilpotent e12: minimal polynomial t^2.
  CHECK_FALSE(is_max_subfield_gen(AlgebraElem::basis(M2, 1)));
  // The rotation matrix [[0,-1],[1,0]] has irreducible t^2 + 1.
  CHECK(is_max_subfield_gen(AlgebraElem::from_int_coords(M2, {0, -1, 1, 0})));
}

TEST_CASE("multiplicative commutator search in quaternions") {
  const AlgebraPtr H = hamilton();
  const AlgebraElem i = AlgebraElem::basis(H, 1);
  const AlgebraElem j = AlgebraElem::basis(H, 2);

  const CommutatorWitness w = search_mult_commutator(i, 50, 1);
  CHECK(w.partner == AlgebraElem::unit(H) + j);
  CHECK(w.commutator == -j);
  CHECK(w.certificate == UPoly::of_ints(Q, {1, 0, 1}));
  // Scan order: four basis elements, then 1+i, then the winner 1+j.
  CHECK(w.tried == 6);

  // Certificates re-verified from scratch.
  const auto ai = alg_inverse(i);
  const auto bi = alg_inverse(w.partner);
  REQUIRE(ai.has_value());
  REQUIRE(bi.has_value());
  CHECK(i * w.partner * *ai * *bi == w.commutator);
  CHECK(minpoly_element(w.commutator) == w.certificate);

  CHECK(thrown_kind([&] { (void)search_mult_commutator(AlgebraElem::unit(H), 10, 1); }) ==
        Err::CentralElement);
  CHECK(thrown_kind([&] {
          (void)search_mult_commutator(AlgebraElem::scalar(H, FieldElem::from_int(Q, 5)), 10, 1);
        }) == Err::CentralElement);
  CHECK(thrown_kind([&] { (void)search_mult_commutator(AlgebraElem(H), 10, 1); }) ==
        Err::CentralElement);

  const AlgebraPtr M2 = matrix_algebra(Q, 2);
  CHECK(thrown_kind([&] { (void)search_mult_commutator(AlgebraElem::basis(M2, 0), 10, 1); }) ==
        Err::NotInvertible);
  CHECK(thrown_kind([&] {
          (void)search_mult_commutator(AlgebraElem::basis(root2_algebra(), 1), 10, 1);
        }) == Err::DimensionNotSquare);
}

TEST_CASE("multiplicative commutator search in a matrix surrogate") {
  const FieldCtx F5 = FieldCtx::prime(5);
  const AlgebraPtr M3 = matrix_algebra(F5, 3);
  const AlgebraElem a = AlgebraElem::from_int_coords(M3, {1, 0, 0, 0, 2, 0, 0, 0, 3});

  const CommutatorWitness w = search_mult_commutator(a, 200, 20240817);
  CHECK(w.certificate.degree() == 3);
  CHECK(minpoly_element(w.commutator) == w.certificate);
  const auto ai = alg_inverse(a);
  const auto bi = alg_inverse(w.partner);
  REQUIRE(ai.has_value());
  REQUIRE(bi.has_value());
  CHECK(a * w.partner * *ai * *bi == w.commutator);
  // Matrix units and their pairwise sums are all singular in M3, so the
  // deterministic phase cannot have produced the winner.
  CHECK(w.tried > 9 + 36);
}

TEST_CASE("additive commutator search") {
  const AlgebraPtr H = hamilton();
  const AlgebraElem i = AlgebraElem::basis(H, 1);
  const AlgebraElem j = AlgebraElem::basis(H, 2);
  const AlgebraElem k = AlgebraElem::basis(H, 3);

  const CommutatorWitness w = search_add_commutator(i, 50, 1);
  CHECK(w.partner == j);
  CHECK(w.commutator == k + k);  // ij - ji = 2k
  CHECK(w.certificate == UPoly::of_ints(Q, {4, 0, 1}));
  CHECK(w.tried == 3);  // 1 and i give zero, then j wins
  CHECK(minpoly_element(w.commutator) == w.certificate);

  CHECK(thrown_kind([&] { (void)search_add_commutator(AlgebraElem::unit(H), 10, 1); }) ==
        Err::CentralElement);

  // A full companion matrix in M4(Q): random partners reach degree 4.
  const AlgebraPtr M4 = matrix_algebra(Q, 4);
  const AlgebraElem c4 = from_matrix(M4, companion(UPoly::of_ints(Q, {1, 0, -10, 0, 1})));
  const CommutatorWitness w4 = search_add_commutator(c4, 200, 5);
  CHECK(w4.certificate.degree() == 4);
  CHECK(c4 * w4.partner - w4.partner * c4 == w4.commutator);
  CHECK(minpoly_element(w4.commutator) == w4.certificate);
}

TEST_CASE("conjugate-shift identity") {
  const AlgebraPtr H = hamilton();
  const AlgebraElem i = AlgebraElem::basis(H, 1);
  const AlgebraElem j = AlgebraElem::basis(H, 2);
  const AlgebraElem one = AlgebraElem::unit(H);

  // a = i, alpha = j: the common value is 2.
  CHECK(verify_conjugate_shift_identity(i, j) ==
        AlgebraElem::scalar(H, FieldElem::from_int(Q, 2)));
  // Central alpha = 1: both sides vanish.
  CHECK(verify_conjugate_shift_identity(i, one) == AlgebraElem(H));

  // Random invertible pairs in the quaternions; the returned value must match
  // an independent evaluation of the right-hand side.
  Sampler rng(246);
  int checked = 0;
  while (checked < 500) {
    const AlgebraElem a = random_element(H, 3, rng);
    const AlgebraElem alpha = random_element(H, 3, rng);
    if (a.is_zero() || alpha.is_zero() || (alpha + one).is_zero()) continue;
    const AlgebraElem value = verify_conjugate_shift_identity(a, alpha);
    const auto ai = alg_inverse(a);
    const auto yi = alg_inverse(alpha);
    REQUIRE(ai.has_value());
    REQUIRE(yi.has_value());
    CHECK(value == one - *yi * a * alpha * *ai);
    ++checked;
  }

  // The identity is a pure ring identity: it holds in matrix rings too.
  const AlgebraPtr M3 = matrix_algebra(Q, 3);
  const AlgebraElem m3one = AlgebraElem::unit(M3);
  int matrix_checked = 0;
  while (matrix_checked < 200) {
    const AlgebraElem a = random_element(M3, 2, rng);
    const AlgebraElem alpha = random_element(M3, 2, rng);
    if (!alg_inverse(a) || !alg_inverse(alpha) || !alg_inverse(alpha + m3one)) continue;
    const auto ai = alg_inverse(a);
    const auto yi = alg_inverse(alpha);
    CHECK(verify_conjugate_shift_identity(a, alpha) == m3one - *yi * a * alpha * *ai);
    ++matrix_checked;
  }

  const AlgebraPtr M2 = matrix_algebra(Q, 2);
  CHECK(thrown_kind([&] {
          (void)verify_conjugate_shift_identity(AlgebraElem::basis(M2, 0),
                                                AlgebraElem::unit(M2));
        }) == Err::NotInvertible);
  CHECK(thrown_kind([&] {
          (void)verify_conjugate_shift_identity(AlgebraElem::unit(M2), AlgebraElem::basis(M2, 1));
        }) == Err::NotInvertible);
  CHECK(thrown_kind([&] { (void)verify_conjugate_shift_identity(i, -one); }) ==
        Err::NotInvertible);
  CHECK(thrown_kind([&] { (void)verify_conjugate_shift_identity(i, AlgebraElem::unit(M2)); }) ==
        Err::AlgebraMismatch);
}

TEST_CASE("tower basis splits into repeated companion blocks") {
  const AlgebraPtr L = biquadratic_algebra();
  const AlgebraElem s = AlgebraElem::basis(L, 1);
  const AlgebraElem r = AlgebraElem::basis(L, 2);

  {
    const TowerBasis tb = build_tower_basis(L, s, r);
    CHECK(tb.alpha_minpoly == UPoly::of_ints(Q, {-2, 0, 1}));
    CHECK(tb.block_count == 2);
    REQUIRE(tb.basis.size() == 4);
    CHECK(tb.basis[0] == AlgebraElem::unit(L));
    CHECK(tb.basis[1] == s);
    CHECK(tb.basis[2] == r);
    CHECK(tb.basis[3] == s * r);
    const Matrix expected = Matrix::from_ints(Q, {{0, 2, 0, 0},
                                                  {1, 0, 0, 0},
                                                  {0, 0, 0, 2},
                                                  {0, 0, 1, 0}});
    CHECK(tb.action == expected);
    const std::vector<Matrix> blocks(2, companion(tb.alpha_minpoly));
    CHECK(tb.action == direct_sum(blocks));
  }

  // Single block over Q(sqrt2) with beta = 1.
  {
    const AlgebraPtr L2 = root2_algebra();
    const TowerBasis tb = build_tower_basis(L2, AlgebraElem::basis(L2, 1), AlgebraElem::unit(L2));
    CHECK(tb.block_count == 1);
    CHECK(tb.action == companion(UPoly::of_ints(Q, {-2, 0, 1})));
    REQUIRE(tb.basis.size() == 2);
    CHECK(tb.basis[1] == AlgebraElem::basis(L2, 1));
  }

  // Degenerate alpha = 1: dim identical 1x1 blocks, powers of beta as basis.
  {
    const TowerBasis tb = build_tower_basis(L, AlgebraElem::unit(L), s + r);
    CHECK(tb.alpha_minpoly == UPoly::of_ints(Q, {-1, 1}));
    CHECK(tb.block_count == 4);
    CHECK(tb.action == Matrix::identity(Q, 4));
    REQUIRE(tb.basis.size() == 4);
    CHECK(tb.basis[0] == AlgebraElem::unit(L));
    CHECK(tb.basis[1] == s + r);
    CHECK(tb.basis[2] == (s + r) * (s + r));
    CHECK(tb.basis[3] == (s + r) * (s + r) * (s + r));
    // beta = sqrt2 + sqrt3 is primitive: t^4 - 10 t^2 + 1.
    CHECK(minpoly_in_algebra(s + r) == UPoly::of_ints(Q, {1, 0, -10, 0, 1}));
  }

  // Error taxonomy.
  const AlgebraPtr M2 = matrix_algebra(Q, 2);
  CHECK(thrown_kind([&] {
          (void)build_tower_basis(M2, AlgebraElem::basis(M2, 1), AlgebraElem::basis(M2, 2));
        }) == Err::NotAField);
  const AlgebraPtr P = split_pair_algebra();
  CHECK(thrown_kind([&] {
          (void)build_tower_basis(P, AlgebraElem::basis(P, 0), AlgebraElem::basis(P, 1));
        }) == Err::NotAField);
  CHECK(thrown_kind([&] { (void)build_tower_basis(L, s, s); }) == Err::NotGenerating);
  CHECK(thrown_kind([&] { (void)build_tower_basis(L, AlgebraElem::unit(M2), s); }) ==
        Err::AlgebraMismatch);
}

TEST_CASE("matrix commutator pair search") {
  const Matrix C = direct_sum({companion(UPoly::of_ints(Q, {1, 0, 1})),
                               companion(UPoly::of_ints(Q, {-2, 0, 1}))});

  const MatrixCommutatorResult res = search_matrix_commutators(C, 300, 11);
  const auto Ci = inverse(C);
  const auto Ai = inverse(res.A);
  REQUIRE(Ci.has_value());
  REQUIRE(Ai.has_value());
  const Matrix mult = C * res.A * *Ci * *Ai;
  const Matrix add = res.B * C - C * res.B;
  CHECK(minpoly_matrix(mult) == res.mult_certificate);
  CHECK(minpoly_matrix(add) == res.add_certificate);
  CHECK(res.mult_certificate.degree() == 4);
  CHECK(res.add_certificate.degree() == 4);
  CHECK(is_nonderogatory(mult));
  CHECK(is_nonderogatory(add));
  // Structural shape: the multiplicative witness is (C A C^-1) * A^-1.
  CHECK(mult == (C * res.A * *Ci) * *Ai);

  // Prime-field variant.
  const FieldCtx F5 = FieldCtx::prime(5);
  const Matrix C5 = direct_sum({companion(UPoly::of_ints(F5, {1, 1, 1})),
                                companion(UPoly::of_ints(F5, {1, 0, 1}))});
  const MatrixCommutatorResult res5 = search_matrix_commutators(C5, 300, 12);
  CHECK(res5.mult_certificate.degree() == 4);
  CHECK(res5.add_certificate.degree() == 4);

  // Structure violations.
  const Matrix with_unit_block =
      direct_sum({Matrix::from_ints(Q, {{2}}), companion(UPoly::of_ints(Q, {1, 0, 0, 1}))});
  CHECK(thrown_kind([&] { (void)search_matrix_commutators(with_unit_block, 10, 1); }) ==
        Err::BadBlockStructure);
  CHECK(thrown_kind([&] { (void)search_matrix_commutators(Matrix::identity(Q, 4), 10, 1); }) ==
        Err::BadBlockStructure);
  const Matrix dense = Matrix::from_ints(Q, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  CHECK(thrown_kind([&] { (void)search_matrix_commutators(dense, 10, 1); }) ==
        Err::BadBlockStructure);
  // n = 2 is below the construction's range even with a valid block.
  const Matrix small = companion(UPoly::of_ints(Q, {1, 0, 1}));
  CHECK(thrown_kind([&] { (void)search_matrix_commutators(small, 10, 1); }) ==
        Err::BadBlockStructure);
  // Zero constant term makes C singular.
  const Matrix singular = direct_sum({companion(UPoly::of_ints(Q, {0, 1, 1})),
                                      companion(UPoly::of_ints(Q, {1, 0, 1}))});
  CHECK(thrown_kind([&] { (void)search_matrix_commutators(singular, 10, 1); }) ==
        Err::NotInvertible);
  // A budget of one random draw is not enough for this seed.
  CHECK(thrown_kind([&] { (void)search_matrix_commutators(C, 1, 37); }) ==
        Err::SearchExhausted);
}

TEST_CASE("degree bound reports") {
  const AlgebraPtr H = hamilton();
  const bool division =
      is_division_quaternion(FieldElem::from_int(Q, -1), FieldElem::from_int(Q, -1));
  CHECK(division);

  {
    Sampler rng(2025);
    const DegreeBoundReport rep =
        verify_degree_bound(H, rng, BoundMode::NormalSubgroup, 300, division);
    CHECK(rep.n == 2);
    CHECK(rep.d == 2);
    CHECK(rep.bound_holds);
    CHECK(rep.tight);
    REQUIRE(rep.witness.has_value());
    REQUIRE(rep.certificate.has_value());
    CHECK(minpoly_element(*rep.witness) == *rep.certificate);
    CHECK(rep.samples == 300);
    const auto lines = rep.to_lines();
    REQUIRE(lines.size() >= 9);
    CHECK(lines[0] == "mode=normal_subgroup");
    CHECK(lines[1] == "d=2");
    CHECK(lines[2] == "n=2");
    CHECK(lines[7] == "surrogate=false");
  }
  {
    Sampler rng(2026);
    const DegreeBoundReport rep =
        verify_degree_bound(H, rng, BoundMode::MultCommutator, 100, division);
    CHECK(rep.d == 2);
    CHECK(rep.tight);
    REQUIRE(rep.witness.has_value());
    CHECK(minpoly_element(*rep.witness) == *rep.certificate);
  }
  {
    Sampler rng(2027);
    const DegreeBoundReport rep =
        verify_degree_bound(H, rng, BoundMode::AddCommutator, 100, division);
    CHECK(rep.d == 2);
    CHECK(rep.tight);
  }

  // The coefficient field itself: everything has degree 1 and the bound is
  // the trivial 1 <= 1.
  {
    const AlgebraPtr F = scalar_algebra();
    for (const BoundMode mode :
         {BoundMode::NormalSubgroup, BoundMode::MultCommutator, BoundMode::AddCommutator}) {
      Sampler rng(7);
      const DegreeBoundReport rep = verify_degree_bound(F, rng, mode, 50, true);
      CHECK(rep.n == 1);
      CHECK(rep.d == 1);
      CHECK(rep.bound_holds);
      CHECK(rep.tight);
    }
  }

  // Matrix surrogate: labeled as such in the report lines.
  {
    const AlgebraPtr M3 = matrix_algebra(Q, 3);
    Sampler rng(31);
    const DegreeBoundReport rep = verify_degree_bound(M3, rng, BoundMode::NormalSubgroup, 100);
    CHECK(rep.n == 3);
    CHECK(rep.d == 3);
    CHECK(rep.bound_holds);
    bool saw = false;
    for (const auto& line : rep.to_lines())
      if (line == "surrogate=true") saw = true;
    CHECK(saw);
  }

  Sampler rng(1);
  CHECK(thrown_kind([&] {
          (void)verify_degree_bound(root2_algebra(), rng, BoundMode::NormalSubgroup, 10);
        }) == Err::DimensionNotSquare);
  CHECK(thrown_kind([&] { (void)verify_degree_bound(H, rng, BoundMode::NormalSubgroup, 0); }) ==
        Err::ValidationError);

  CHECK(bound_mode_name(BoundMode::AddCommutator) == std::string("add_comm"));
  CHECK(parse_bound_mode("mult_comm") == BoundMode::MultCommutator);
  CHECK_FALSE(parse_bound_mode("bogus").has_value());
}
