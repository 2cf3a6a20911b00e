#include "divalg/maxsubfield.hpp"

#include <string>
#include <utility>

#include "divalg/identities.hpp"

namespace divalg {

namespace {

int require_square_dim(const AlgebraPtr& alg) {
  const int dim = alg->dim();
  int n = 0;
  while (n * n < dim) ++n;
  if (n * n != dim)
    fail(Err::DimensionNotSquare,
         "dimension " + std::to_string(dim) + " is not a perfect square");
  return n;
}

}  // namespace

bool is_max_subfield_gen(const AlgebraElem& alpha) {
  const int n = require_square_dim(alpha.alg());
  const UPoly m = minpoly_element(alpha);
  if (m.degree() != n) return false;
  try {
    return is_irreducible(m);
  } catch (const Error& err) {
    // Degree beyond the irreducibility test's range: fall back to the degree
    // criterion alone.
    if (err.kind() == Err::UnsupportedDegree) return true;
    throw;
  }
}

namespace {

CommutatorWitness search_commutator_impl(const AlgebraElem& a, int budget, std::uint64_t seed,
                                         bool multiplicative) {
  const AlgebraPtr& alg = a.alg();
  const int n = require_square_dim(alg);
  if (budget < 0) fail(Err::ValidationError, "budget must be >= 0");
  if (is_central(a)) fail(Err::CentralElement, "a is central: every commutator is trivial");
  const auto ai = alg_inverse(a);
  if (!ai) fail(Err::NotInvertible, "a has no inverse");

  long long tried = 0;
  auto attempt = [&](const AlgebraElem& cand) -> std::optional<CommutatorWitness> {
    ++tried;
    std::optional<AlgebraElem> w;
    if (multiplicative) {
      const auto ci = alg_inverse(cand);
      if (!ci) return std::nullopt;
      w = a * cand * *ai * *ci;
    } else {
      w = a * cand - cand * a;
    }
    const UPoly m = minpoly_element(*w);
    if (m.degree() != n) return std::nullopt;
    return CommutatorWitness{cand, std::move(*w), m, tried};
  };

  const int dim = alg->dim();
  for (int i = 0; i < dim; ++i)
    if (auto hit = attempt(AlgebraElem::basis(alg, i))) return *hit;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      if (auto hit = attempt(AlgebraElem::basis(alg, i) + AlgebraElem::basis(alg, j)))
        return *hit;
  const long long deterministic = tried;

  Sampler rng(seed);
  for (int t = 0; t < budget; ++t)
    if (auto hit = attempt(random_element(alg, 3, rng))) return *hit;

  fail(Err::SearchExhausted,
       std::string("no degree-") + std::to_string(n) + " " +
           (multiplicative ? "multiplicative" : "additive") + " commutator found: " +
           std::to_string(deterministic) + " deterministic and " +
           std::to_string(tried - deterministic) + " random candidates examined");
}

}  // namespace

CommutatorWitness search_mult_commutator(const AlgebraElem& a, int budget, std::uint64_t seed) {
  return search_commutator_impl(a, budget, seed, true);
}

CommutatorWitness search_add_commutator(const AlgebraElem& a, int budget, std::uint64_t seed) {
  return search_commutator_impl(a, budget, seed, false);
}

AlgebraElem verify_conjugate_shift_identity(const AlgebraElem& a, const AlgebraElem& alpha) {
  if (a.alg() != alpha.alg())
    fail(Err::AlgebraMismatch, "a and alpha live in different algebras");
  const AlgebraPtr& alg = a.alg();
  const auto ai = alg_inverse(a);
  if (!ai) fail(Err::NotInvertible, "a has no inverse");
  const auto yi = alg_inverse(alpha);
  if (!yi) fail(Err::NotInvertible, "alpha has no inverse");
  const AlgebraElem shifted = alpha + AlgebraElem::unit(alg);
  const auto si = alg_inverse(shifted);
  if (!si) fail(Err::NotInvertible, "alpha + 1 has no inverse");

  const AlgebraElem base = *yi * a * alpha * *ai;
  const AlgebraElem lhs = shifted * (*si * a * shifted * *ai - base);
  const AlgebraElem rhs = AlgebraElem::unit(alg) - base;
  if (!(lhs == rhs))
    fail(Err::ValidationError,
         "conjugate-shift identity violated: the multiplication table is inconsistent");
  return lhs;
}

TowerBasis build_tower_basis(const AlgebraPtr& L, const AlgebraElem& alpha,
                             const AlgebraElem& beta) {
  if (alpha.alg() != L || beta.alg() != L)
    fail(Err::AlgebraMismatch, "alpha and beta must be elements of L");
  if (!L->is_commutative()) fail(Err::NotAField, "L is not commutative");
  const int dim = L->dim();

  // Field-and-generation certificate: some small combination of alpha and
  // beta must be a primitive element — full degree with an irreducible
  // minimal polynomial.  A full-degree generator with a reducible minimal
  // polynomial exhibits zero divisors instead.
  if (dim > 1) {
    bool certified = false;
    bool reducible_generator = false;
    auto consider = [&](const AlgebraElem& g) {
      if (certified) return;
      const UPoly m = minpoly_in_algebra(g);
      if (m.degree() != dim) return;
      if (is_irreducible(m))
        certified = true;
      else
        reducible_generator = true;
    };
    consider(beta);
    consider(alpha);
    consider(alpha * beta);
    AlgebraElem shift = alpha;
    for (int m = 1; m <= 2 * dim * dim && !certified; ++m) {
      shift = shift + beta;
      consider(shift);
    }
    if (!certified) {
      if (reducible_generator)
        fail(Err::NotAField,
             "a full-degree combination of alpha and beta has a reducible minimal "
             "polynomial, so L has zero divisors");
      fail(Err::NotGenerating, "no small combination of alpha and beta reaches degree " +
                                   std::to_string(dim) + "; alpha and beta do not generate L");
    }
  }

  const UPoly p_alpha = minpoly_in_algebra(alpha);
  const int d = p_alpha.degree();
  if (d < 1 || dim % d != 0)
    fail(Err::ValidationError, "degree of alpha does not divide the dimension of L");
  const int k = dim / d;

  std::vector<AlgebraElem> basis;
  basis.reserve(static_cast<std::size_t>(dim));
  AlgebraElem beta_pow = AlgebraElem::unit(L);
  for (int j = 0; j < k; ++j) {
    AlgebraElem cur = beta_pow;
    for (int i = 0; i < d; ++i) {
      basis.push_back(cur);
      if (i + 1 < d) cur = cur * alpha;
    }
    if (j + 1 < k) beta_pow = beta_pow * beta;
  }

  const FieldCtx& F = L->ctx();
  Matrix bmat(F, dim, dim);
  for (int s = 0; s < dim; ++s)
    for (int r = 0; r < dim; ++r) bmat.at(r, s) = basis[static_cast<std::size_t>(s)].coord(r);
  const auto binv = inverse(bmat);
  if (!binv)
    fail(Err::NotGenerating, "the products alpha^i beta^j are linearly dependent");

  Matrix shifted(F, dim, dim);
  for (int s = 0; s < dim; ++s) {
    const AlgebraElem prod = basis[static_cast<std::size_t>(s)] * alpha;
    for (int r = 0; r < dim; ++r) shifted.at(r, s) = prod.coord(r);
  }
  Matrix action = *binv * shifted;

  const std::vector<Matrix> blocks(static_cast<std::size_t>(k), companion(p_alpha));
  if (!(action == direct_sum(blocks)))
    fail(Err::ValidationError,
         "multiplication by alpha is not a repeated companion block in the tower basis");

  return TowerBasis{std::move(basis), std::move(action), p_alpha, k};
}

namespace {

// Validates that C is a direct sum of companion blocks (each of size >= 2)
// and returns the block sizes.
std::vector<int> companion_block_sizes(const Matrix& C) {
  if (!C.is_square()) fail(Err::BadBlockStructure, "C must be square");
  const int n = C.rows();
  if (n == 0) fail(Err::BadBlockStructure, "C is empty");
  const FieldElem one = FieldElem::one(C.ctx());

  std::vector<int> sizes;
  int i = 0;
  while (i < n) {
    int s = 1;
    while (i + s < n && C.at(i + s, i + s - 1) == one) ++s;
    for (int c = i; c < i + s; ++c) {
      const bool interior = c + 1 < i + s;
      for (int r = 0; r < n; ++r) {
        const FieldElem& e = C.at(r, c);
        if (interior) {
          if (r == c + 1 ? !(e == one) : !e.is_zero())
            fail(Err::BadBlockStructure, "C is not a direct sum of companion blocks");
        } else if ((r < i || r >= i + s) && !e.is_zero()) {
          fail(Err::BadBlockStructure, "C is not a direct sum of companion blocks");
        }
      }
    }
    if (s == 1)
      fail(Err::BadBlockStructure, "every companion block must have size at least 2");
    sizes.push_back(s);
    i += s;
  }
  return sizes;
}

}  // namespace

MatrixCommutatorResult search_matrix_commutators(const Matrix& C, int budget,
                                                 std::uint64_t seed) {
  companion_block_sizes(C);
  const int n = C.rows();
  if (n <= 2) fail(Err::BadBlockStructure, "the block sizes must sum to n > 2");
  if (budget < 1) fail(Err::ValidationError, "budget must be >= 1");
  const auto Cinv = inverse(C);
  if (!Cinv) fail(Err::NotInvertible, "C is singular: a block has zero constant term");

  Sampler rng(seed);
  auto random_matrix = [&] {
    Matrix M(C.ctx(), n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        M.at(r, c) = FieldElem::from_int(C.ctx(), rng.uniform_int(-3, 3));
    return M;
  };

  std::optional<Matrix> A;
  std::optional<UPoly> cert_a;
  long long tried_a = 0;
  while (tried_a < budget && !A) {
    ++tried_a;
    Matrix cand = random_matrix();
    const auto ci = inverse(cand);
    if (!ci) continue;
    const UPoly m = minpoly_matrix(C * cand * *Cinv * *ci);
    if (m.degree() == n) {
      A = std::move(cand);
      cert_a = m;
    }
  }
  if (!A)
    fail(Err::SearchExhausted, "no invertible A with a degree-" + std::to_string(n) +
                                   " conjugation commutator among " + std::to_string(tried_a) +
                                   " candidates");

  std::optional<Matrix> B;
  std::optional<UPoly> cert_b;
  long long tried_b = 0;
  while (tried_b < budget && !B) {
    ++tried_b;
    Matrix cand = random_matrix();
    const UPoly m = minpoly_matrix(cand * C - C * cand);
    if (m.degree() == n) {
      B = std::move(cand);
      cert_b = m;
    }
  }
  if (!B)
    fail(Err::SearchExhausted, "no B with a degree-" + std::to_string(n) +
                                   " additive commutator among " + std::to_string(tried_b) +
                                   " candidates");

  return MatrixCommutatorResult{std::move(*A), std::move(*B), std::move(*cert_a),
                                std::move(*cert_b), tried_a, tried_b};
}

const char* bound_mode_name(BoundMode mode) {
  switch (mode) {
    case BoundMode::NormalSubgroup: return "normal_subgroup";
    case BoundMode::MultCommutator: return "mult_comm";
    case BoundMode::AddCommutator: return "add_comm";
  }
  return "?";
}

std::optional<BoundMode> parse_bound_mode(std::string_view name) {
  if (name == "normal_subgroup") return BoundMode::NormalSubgroup;
  if (name == "mult_comm") return BoundMode::MultCommutator;
  if (name == "add_comm") return BoundMode::AddCommutator;
  return std::nullopt;
}

DegreeBoundReport verify_degree_bound(const AlgebraPtr& alg, Sampler& rng, BoundMode mode,
                                      int sample, bool division_certified) {
  const int n = require_square_dim(alg);
  if (sample < 1) fail(Err::ValidationError, "sample count must be >= 1");

  DegreeBoundReport rep;
  rep.mode = mode;
  rep.n = n;
  rep.division_certified = division_certified;

  auto record = [&](const AlgebraElem& w, const UPoly& m) {
    if (m.degree() > rep.d) {
      rep.d = m.degree();
      rep.witness = w;
      rep.certificate = m;
    }
  };

  auto draw_invertible = [&]() -> std::optional<AlgebraElem> {
    for (int t = 0; t < 64; ++t) {
      AlgebraElem x = random_element(alg, 3, rng);
      if (alg_inverse(x)) return x;
    }
    return std::nullopt;
  };

  bool stalled = false;
  for (int s = 0; s < sample && !stalled; ++s) {
    std::optional<AlgebraElem> w;
    switch (mode) {
      case BoundMode::NormalSubgroup:
        w = draw_invertible();
        break;
      case BoundMode::MultCommutator: {
        const auto a = draw_invertible();
        const auto b = draw_invertible();
        if (a && b) w = commutators(*a, *b).first;
        break;
      }
      case BoundMode::AddCommutator: {
        const AlgebraElem a = random_element(alg, 3, rng);
        const AlgebraElem c = random_element(alg, 3, rng);
        w = a * c - c * a;
        break;
      }
    }
    if (!w) {
      rep.notes.push_back("sampling stalled: no invertible elements found");
      stalled = true;
      break;
    }
    ++rep.samples;
    record(*w, minpoly_element(*w));
  }

  // For the commutator families, the deterministic search supplies a
  // full-degree witness when random sampling fell short.
  if (rep.d < n && mode != BoundMode::NormalSubgroup) {
    std::optional<AlgebraElem> anchor;
    for (int i = 0; i < alg->dim() && !anchor; ++i) {
      AlgebraElem x = AlgebraElem::basis(alg, i);
      if (!is_central(x) && alg_inverse(x)) anchor = std::move(x);
    }
    if (!anchor) {
      rep.notes.push_back("no noncentral invertible basis element to anchor the witness search");
    } else {
      try {
        const CommutatorWitness wit = mode == BoundMode::MultCommutator
                                          ? search_mult_commutator(*anchor, 64, rng.raw())
                                          : search_add_commutator(*anchor, 64, rng.raw());
        ++rep.samples;
        record(wit.commutator, wit.certificate);
      } catch (const Error& err) {
        rep.notes.push_back(std::string("witness search failed: ") + err.what());
      }
    }
  }

  rep.bound_holds = alg->dim() <= rep.d * rep.d;
  rep.tight = rep.d == n;
  if (!division_certified && alg->dim() > 1)
    rep.notes.push_back("surrogate run: the division property of this algebra is not certified");
  return rep;
}

std::vector<std::string> DegreeBoundReport::to_lines() const {
  std::vector<std::string> out;
  out.push_back(std::string("mode=") + bound_mode_name(mode));
  out.push_back("d=" + std::to_string(d));
  out.push_back("n=" + std::to_string(n));
  out.push_back("witness=" + (witness ? witness->str() : std::string("none")));
  out.push_back("certificate=" + (certificate ? certificate->str() : std::string("none")));
  out.push_back(std::string("bound_holds=") + (bound_holds ? "true" : "false"));
  out.push_back(std::string("tight=") + (tight ? "true" : "false"));
  out.push_back(std::string("surrogate=") + (division_certified ? "false" : "true"));
  out.push_back("samples=" + std::to_string(samples));
  for (const std::string& note : notes) out.push_back("note=" + note);
  return out;
}

}  // namespace divalg
