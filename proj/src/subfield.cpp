#include "divalg/subfield.hpp"

#include <cmath>

namespace divalg {

namespace {

Matrix coords_as_column(const AlgebraElem& x) {
  Matrix col(x.ctx(), x.dim(), 1);
  for (int i = 0; i < x.dim(); ++i) col.at(i, 0) = x.coord(i);
  return col;
}

// Greedy scan of the distinguished basis: keep the elements that enlarge the
// F-span of { products(B_t, u^m) }, where products applies u-powers on the
// side determined by `side`.
std::vector<AlgebraElem> greedy_basis(const AlgebraPtr& alg,
                                      const std::vector<AlgebraElem>& upow, int n, Side side) {
  const FieldCtx& F = alg->ctx();
  const int dim = alg->dim();
  std::vector<AlgebraElem> basis;
  Matrix span(F, dim, 0);
  int filled = 0;
  for (int g = 0; g < dim && static_cast<int>(basis.size()) < n; ++g) {
    const AlgebraElem cand = AlgebraElem::basis(alg, g);
    if (filled > 0) {
      Matrix sub(F, dim, filled);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < filled; ++c) sub.at(r, c) = span.at(r, c);
      if (solve_linear(sub, coords_as_column(cand)).has_value()) continue;  // already spanned
    }
    basis.push_back(cand);
    Matrix grown(F, dim, filled + n);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < filled; ++c) grown.at(r, c) = span.at(r, c);
    for (int m = 0; m < n; ++m) {
      const AlgebraElem prod = side == Side::Right ? cand * upow[static_cast<std::size_t>(m)]
                                                   : upow[static_cast<std::size_t>(m)] * cand;
      for (int r = 0; r < dim; ++r) grown.at(r, filled + m) = prod.coord(r);
    }
    span = std::move(grown);
    filled += n;
  }
  if (static_cast<int>(basis.size()) < n)
    fail(Err::NotGenerating, "the distinguished basis does not generate D over K");
  return basis;
}

Matrix coordinate_matrix(const SubfieldCtx& ctx, Side side) {
  const std::vector<AlgebraElem>& basis =
      side == Side::Right ? ctx.right_basis : ctx.left_basis;
  const int dim = ctx.alg->dim(), n = ctx.k_degree;
  Matrix M(ctx.alg->ctx(), dim, dim);
  for (int t = 0; t < n; ++t)
    for (int m = 0; m < n; ++m) {
      const AlgebraElem prod = side == Side::Right
                                   ? basis[static_cast<std::size_t>(t)] * ctx.u_powers[static_cast<std::size_t>(m)]
                                   : ctx.u_powers[static_cast<std::size_t>(m)] * basis[static_cast<std::size_t>(t)];
      for (int r = 0; r < dim; ++r) M.at(r, t * n + m) = prod.coord(r);
    }
  return M;
}

}  // namespace

SubfieldCtx build_subfield(const AlgebraPtr& alg, const AlgebraElem& u) {
  if (u.alg() != alg && !u.alg()->same_structure(*alg))
    fail(Err::AlgebraMismatch, "generator from a different algebra");
  const int dim = alg->dim();
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
  if (n * n != dim)
    fail(Err::DimensionNotSquare,
         "algebra dimension " + std::to_string(dim) + " is not a perfect square");
  if (dim > 1 && is_central(u))
    fail(Err::CentralGenerator, "generator lies in the center and spans no maximal subfield");
  UPoly m = minpoly_in_algebra(u);
  if (!is_irreducible(m))
    fail(Err::NotIrreducible, "minimal polynomial " + m.str() + " of the generator is reducible");
  if (m.degree() != n)
    fail(Err::WrongDegree, "generator has degree " + std::to_string(m.degree()) +
                               " but a maximal subfield needs degree " + std::to_string(n));

  SubfieldCtx ctx(alg, u, m, FieldCtx::extension(m, "u"));
  ctx.u_powers.push_back(AlgebraElem::unit(alg));
  for (int i = 1; i < n; ++i) ctx.u_powers.push_back(ctx.u_powers.back() * u);
  ctx.right_basis = greedy_basis(alg, ctx.u_powers, n, Side::Right);
  ctx.left_basis = greedy_basis(alg, ctx.u_powers, n, Side::Left);
  for (Side side : {Side::Right, Side::Left}) {
    Matrix M = coordinate_matrix(ctx, side);
    auto inv = inverse(M);
    if (!inv) fail(Err::NotGenerating, "basis powers of u do not span the algebra");
    (side == Side::Right ? ctx.right_inv : ctx.left_inv) = std::move(*inv);
  }
  return ctx;
}

std::vector<FieldElem> k_coordinates(const SubfieldCtx& ctx, const AlgebraElem& x, Side side) {
  if (x.alg() != ctx.alg && !x.alg()->same_structure(*ctx.alg))
    fail(Err::AlgebraMismatch, "element from a different algebra");
  const int n = ctx.k_degree;
  const Matrix& inv = side == Side::Right ? ctx.right_inv : ctx.left_inv;
  const Matrix c = inv * coords_as_column(x);
  std::vector<FieldElem> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    std::vector<FieldElem> rep;
    rep.reserve(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) rep.push_back(c.at(t * n + m, 0));
    out.push_back(FieldElem::from_rep(ctx.k_ctx, UPoly(ctx.alg->ctx(), std::move(rep))));
  }
  return out;
}

AlgebraElem from_k_coordinates(const SubfieldCtx& ctx, const std::vector<FieldElem>& coords,
                               Side side) {
  if (static_cast<int>(coords.size()) != ctx.k_degree)
    fail(Err::ShapeMismatch, "need one K-coordinate per basis element");
  AlgebraElem acc(ctx.alg);
  for (int t = 0; t < ctx.k_degree; ++t) {
    const AlgebraElem kd = embed_k(ctx, coords[static_cast<std::size_t>(t)]);
    const AlgebraElem& bt =
        (side == Side::Right ? ctx.right_basis : ctx.left_basis)[static_cast<std::size_t>(t)];
    acc += side == Side::Right ? bt * kd : kd * bt;
  }
  return acc;
}

AlgebraElem embed_k(const SubfieldCtx& ctx, const FieldElem& kappa) {
  if (kappa.ctx() != ctx.k_ctx) fail(Err::ContextMismatch, "scalar is not in K");
  if (kappa.is_zero()) return AlgebraElem(ctx.alg);
  return poly_eval_elem(kappa.ext_rep(), ctx.generator);
}

Matrix regular_rep(const SubfieldCtx& ctx, const AlgebraElem& alpha) {
  const int n = ctx.k_degree;
  Matrix rep(ctx.k_ctx, n, n);
  for (int s = 0; s < n; ++s) {
    const auto col = k_coordinates(ctx, alpha * ctx.right_basis[static_cast<std::size_t>(s)],
                                   Side::Right);
    for (int t = 0; t < n; ++t) rep.at(t, s) = col[static_cast<std::size_t>(t)];
  }
  return rep;
}

}  // namespace divalg
