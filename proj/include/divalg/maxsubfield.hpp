#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "divalg/algebra.hpp"
#include "divalg/linalg.hpp"
#include "divalg/rng.hpp"

namespace divalg {

// True when the commutative subalgebra generated by alpha is a maximal
// subfield: the minimal polynomial of alpha over the central coefficient
// field has degree n, where n^2 is the algebra dimension.  When the
// irreducibility test supports the degree, the polynomial is additionally
// certified irreducible (this matters for matrix-ring surrogates, where a
// degree-n minimal polynomial may still factor).
// Errors: DimensionNotSquare when dim is not a perfect square.
bool is_max_subfield_gen(const AlgebraElem& alpha);

// Outcome of a commutator search: the partner element found, the commutator
// it produces, and the commutator's minimal polynomial (the degree-n
// certificate), together with how many candidates were examined.
struct CommutatorWitness {
  AlgebraElem partner;     // the b (or c) that was found
  AlgebraElem commutator;  // a b a^-1 b^-1, resp. a c - c a
  UPoly certificate;       // minimal polynomial of the commutator, degree n
  long long tried = 0;     // candidates examined, including the winner
};

// Searches for b with a b a^-1 b^-1 of full degree n (n^2 = dim).  The scan
// is deterministic first — basis elements, then pairwise sums of basis
// elements — and then draws `budget` seeded random elements of small height.
// Errors: DimensionNotSquare; CentralElement when a is central (the notion
// degenerates); NotInvertible when a has no inverse; SearchExhausted with
// scan statistics when every candidate fails.
CommutatorWitness search_mult_commutator(const AlgebraElem& a, int budget, std::uint64_t seed);

// Same scan for c with a c - c a of full degree n.  Candidates need not be
// invertible here.  Same errors as search_mult_commutator.
CommutatorWitness search_add_commutator(const AlgebraElem& a, int budget, std::uint64_t seed);

// Checks the ring identity
//   (y+1) * ( (y+1)^-1 x (y+1) x^-1  -  y^-1 x y x^-1 )  =  1 - y^-1 x y x^-1
// for x = a, y = alpha, and returns the common value.  The identity holds in
// any ring once a, alpha and alpha+1 are invertible; a mismatch would mean an
// inconsistent multiplication table and raises ValidationError.
// Errors: NotInvertible when a, alpha, or alpha+1 has no inverse.
AlgebraElem verify_conjugate_shift_identity(const AlgebraElem& a, const AlgebraElem& alpha);

// Ordered basis {alpha^i beta^j : 0 <= i < d, 0 <= j < dim/d} of a
// commutative field L = F(alpha)(beta), with the matrix of multiplication by
// alpha in that basis.  The matrix is exactly a direct sum of dim/d copies of
// the companion matrix of alpha's minimal polynomial; build_tower_basis
// recomputes it from scratch and asserts that block shape.
struct TowerBasis {
  std::vector<AlgebraElem> basis;  // alpha-power index varies fastest
  Matrix action;                   // multiplication by alpha, column convention
  UPoly alpha_minpoly;             // the repeated companion block
  int block_count = 0;             // dim / deg(alpha_minpoly)
};

// Errors: AlgebraMismatch when alpha or beta lives outside L; NotAField when
// L is not commutative or a generator certifies a zero divisor (reducible
// full-degree minimal polynomial); NotGenerating when alpha and beta do not
// generate L.  Field certification scans for a primitive element among small
// combinations of alpha and beta and demands an irreducible minimal
// polynomial of degree dim; degrees beyond the irreducibility test's range
// surface its UnsupportedDegree.
TowerBasis build_tower_basis(const AlgebraPtr& L, const AlgebraElem& alpha,
                             const AlgebraElem& beta);

// Result of the paired matrix-commutator search: an invertible A with
// C A C^-1 A^-1 of full degree n and a B with B C - C B of full degree n,
// with the two minimal polynomials as certificates.
struct MatrixCommutatorResult {
  Matrix A;
  Matrix B;
  UPoly mult_certificate;
  UPoly add_certificate;
  long long tried_a = 0;
  long long tried_b = 0;
};

// C must be a direct sum of companion blocks, each of size at least 2, with
// total size n > 2.  Both searches draw seeded random small-height matrices,
// at most `budget` candidates each.
// Errors: BadBlockStructure when C is not in that shape (including size-1
// blocks and n <= 2); NotInvertible when C is singular; SearchExhausted with
// statistics when a budget runs out.
MatrixCommutatorResult search_matrix_commutators(const Matrix& C, int budget,
                                                 std::uint64_t seed);

// Element family whose maximal minimal-polynomial degree is being measured.
enum class BoundMode {
  NormalSubgroup,  // invertible elements (the full unit group)
  MultCommutator,  // a b a^-1 b^-1 over invertible pairs
  AddCommutator,   // a c - c a over arbitrary pairs
};

const char* bound_mode_name(BoundMode mode);               // normal_subgroup, ...
std::optional<BoundMode> parse_bound_mode(std::string_view name);

// Sampled verification that dim <= d^2, where d is the largest minimal
// polynomial degree seen in the chosen family.  d = n is expected to be
// attained; for the commutator modes the deterministic search above supplies
// the witness, for the unit-group mode the sweep keeps its best sample.
// Failures (bound not met, search exhausted) are recorded in the report, not
// thrown.  Errors: DimensionNotSquare only.
struct DegreeBoundReport {
  BoundMode mode = BoundMode::NormalSubgroup;
  int n = 0;                // dim = n^2
  int d = 0;                // max degree observed
  long long samples = 0;    // family elements examined
  std::optional<AlgebraElem> witness;     // element attaining d
  std::optional<UPoly> certificate;       // its minimal polynomial
  bool bound_holds = false;               // dim <= d^2
  bool tight = false;                     // d == n
  bool division_certified = false;        // caller-supplied provenance
  std::vector<std::string> notes;

  // "key=value" lines in stable order: mode, d, n, witness, certificate,
  // bound_holds, tight, surrogate, samples, then one note per line.
  std::vector<std::string> to_lines() const;
};

// `division_certified` records whether the caller has a proof that the
// algebra is division (e.g. a local-symbol certificate for quaternions);
// when false the report labels itself a matrix-ring surrogate run.
DegreeBoundReport verify_degree_bound(const AlgebraPtr& alg, Sampler& rng, BoundMode mode,
                                      int sample, bool division_certified = false);

}  // namespace divalg
