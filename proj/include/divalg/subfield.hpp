#pragma once

#include "divalg/algebra.hpp"

namespace divalg {

enum class Side { Left, Right };

// A maximal subfield K = F(u) inside an algebra D of dimension n^2, together
// with everything needed to move between D and K-coordinates:
//  - right_basis B with D = B_0 K + ... + B_{n-1} K (coefficients on the right)
//  - left_basis  C with D = K C_0 + ... + K C_{n-1}
// Both bases are found by a deterministic greedy scan of the distinguished
// basis of D, so the same algebra and generator always produce the same
// context.  The coordinate change matrices are precomputed and inverted once.
struct SubfieldCtx {
  AlgebraPtr alg;
  AlgebraElem generator;            // u
  UPoly min_poly;                   // of u over F, irreducible of degree n
  int k_degree;                     // n
  FieldCtx k_ctx;                   // F(u) as an exact field
  std::vector<AlgebraElem> u_powers;  // u^0 ... u^{n-1}
  std::vector<AlgebraElem> right_basis, left_basis;
  Matrix right_inv, left_inv;       // inverse coordinate-change matrices over F

  SubfieldCtx(AlgebraPtr a, AlgebraElem u, UPoly m, FieldCtx k)
      : alg(std::move(a)), generator(std::move(u)), min_poly(std::move(m)),
        k_degree(min_poly.degree()), k_ctx(std::move(k)),
        right_inv(alg->ctx(), 0, 0), left_inv(alg->ctx(), 0, 0) {}
};

// Certifies that u generates a maximal subfield of `alg` and builds the
// context.  Errors: CentralGenerator if u is central (and dim > 1),
// NotIrreducible if the minimal polynomial of u over F fails the exact
// irreducibility test, DimensionNotSquare / WrongDegree if deg(u) does not
// equal sqrt(dim D).
SubfieldCtx build_subfield(const AlgebraPtr& alg, const AlgebraElem& u);

// Coordinates of x in the chosen basis: x = sum_t B_t kappa_t (Side::Right)
// or x = sum_t kappa_t C_t (Side::Left), with kappa in K.
std::vector<FieldElem> k_coordinates(const SubfieldCtx& ctx, const AlgebraElem& x, Side side);
AlgebraElem from_k_coordinates(const SubfieldCtx& ctx, const std::vector<FieldElem>& coords,
                               Side side);

// The inclusion K -> D (evaluate the representative polynomial at u).
AlgebraElem embed_k(const SubfieldCtx& ctx, const FieldElem& kappa);

// Right regular representation: the matrix over K of left multiplication
// x |-> alpha x on D viewed as a right K-vector space with basis right_basis.
// Multiplicative: regular_rep(a b) = regular_rep(a) regular_rep(b).
Matrix regular_rep(const SubfieldCtx& ctx, const AlgebraElem& alpha);

}  // namespace divalg
