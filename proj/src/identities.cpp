#include "divalg/identities.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <optional>
#include <utility>

namespace divalg {

namespace {

void require_member(const AlgebraPtr& alg, const AlgebraElem& x, const char* what) {
  if (x.alg() != alg && !x.alg()->same_structure(*alg))
    fail(Err::AlgebraMismatch, std::string(what) + " belongs to a different algebra");
}

void require_positive_degree(int d) {
  if (d < 1) fail(Err::ShapeMismatch, "the alternating sum needs at least one y slot");
}

void require_central_field(const AlgebraPtr& alg) {
  if (alg->center_dim() != 1)
    fail(Err::CenterNotField,
         "center has dimension " + std::to_string(alg->center_dim()) +
             "; degree bounds over the coefficient field need a one-dimensional center");
}

}  // namespace

UPoly minpoly_element(const AlgebraElem& x) {
  const AlgebraPtr& alg = x.alg();
  if (alg->center_dim() != 1 && !alg->is_commutative())
    fail(Err::CenterNotField,
         "center has dimension " + std::to_string(alg->center_dim()) +
             " in a noncommutative algebra; the coefficient field is not central");
  return minpoly_in_algebra(x);
}

UPoly left_minpoly(const SubfieldCtx& ctx, const AlgebraElem& x) {
  require_member(ctx.alg, x, "element");
  const int n = ctx.k_degree;
  const FieldCtx& K = ctx.k_ctx;
  std::vector<std::vector<FieldElem>> cols;
  AlgebraElem power = AlgebraElem::unit(ctx.alg);
  cols.push_back(k_coordinates(ctx, power, Side::Left));
  for (int d = 1; d <= n; ++d) {
    power = power * x;
    std::vector<FieldElem> target = k_coordinates(ctx, power, Side::Left);
    Matrix A(K, n, d);
    Matrix b(K, n, 1);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < d; ++c) A.at(r, c) = cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
      b.at(r, 0) = target[static_cast<std::size_t>(r)];
    }
    if (auto s = solve_linear(A, b)) {
      std::vector<FieldElem> coeffs(static_cast<std::size_t>(d) + 1, FieldElem::zero(K));
      for (int i = 0; i < d; ++i) coeffs[static_cast<std::size_t>(i)] = -s->at(i, 0);
      coeffs[static_cast<std::size_t>(d)] = FieldElem::one(K);
      return UPoly(K, std::move(coeffs));
    }
    cols.push_back(std::move(target));
  }
  fail(Err::ValidationError, "powers stayed left independent past the K-dimension");
}

GdEvaluator::GdEvaluator(AlgebraPtr alg, int d) : alg_(std::move(alg)), d_(d), acc_(alg_) {
  require_positive_degree(d_);
  powers_.assign(static_cast<std::size_t>(d_) + 1, AlgebraElem::unit(alg_));
  partial_.assign(static_cast<std::size_t>(d_) + 1, AlgebraElem(alg_));
  prefix_.assign(static_cast<std::size_t>(d_) + 1, AlgebraElem(alg_));
  used_.assign(static_cast<std::size_t>(d_) + 1, 0);
}

void GdEvaluator::reset(const AlgebraElem& x) {
  require_member(alg_, x, "x");
  powers_[0] = AlgebraElem::unit(alg_);
  for (int i = 1; i <= d_; ++i)
    alg_->mul_into(powers_[static_cast<std::size_t>(i)], powers_[static_cast<std::size_t>(i) - 1],
                   x, ws_);
}

const AlgebraElem& GdEvaluator::eval(const AlgebraElem* const* ys) {
  for (int i = 0; i < d_; ++i) require_member(alg_, *ys[i], "y");
  ys_ = ys;
  acc_ = AlgebraElem(alg_);
  std::fill(used_.begin(), used_.end(), 0);
  sign_ = 1;
  sweep(0);
  return acc_;
}

const AlgebraElem& GdEvaluator::eval(const std::vector<AlgebraElem>& ys) {
  if (static_cast<int>(ys.size()) != d_)
    fail(Err::ShapeMismatch, "expected " + std::to_string(d_) + " y elements, got " +
                                 std::to_string(ys.size()));
  std::vector<const AlgebraElem*> ptrs;
  ptrs.reserve(ys.size());
  for (const AlgebraElem& y : ys) ptrs.push_back(&y);
  return eval(ptrs.data());
}

// Chooses the exponent for the given slot, smallest unused value first, so the
// permutations appear in lexicographic order.  Placing the (rank+1)-th
// smallest unused value contributes `rank` inversions, hence the sign flip on
// odd rank.  partial_[s] holds x^{s(0)} y_1 ... y_s x^{s(s)} for the current
// prefix; prefix_[s] caches partial_[s-1] * y_s, which every exponent choice
// at this slot shares.
void GdEvaluator::sweep(int slot) {
  if (slot > 0)
    alg_->mul_into(prefix_[static_cast<std::size_t>(slot)],
                   partial_[static_cast<std::size_t>(slot) - 1], *ys_[slot - 1], ws_);
  int rank = 0;
  for (int v = 0; v <= d_; ++v) {
    if (used_[static_cast<std::size_t>(v)]) continue;
    const int saved = sign_;
    if (rank & 1) sign_ = -sign_;
    used_[static_cast<std::size_t>(v)] = 1;
    AlgebraElem& here = partial_[static_cast<std::size_t>(slot)];
    if (slot == 0) {
      here = powers_[static_cast<std::size_t>(v)];
    } else if (v == 0) {
      here = prefix_[static_cast<std::size_t>(slot)];
    } else {
      alg_->mul_into(here, prefix_[static_cast<std::size_t>(slot)],
                     powers_[static_cast<std::size_t>(v)], ws_);
    }
    if (slot == d_) {
      if (sign_ > 0)
        acc_ += here;
      else
        acc_ -= here;
    } else {
      sweep(slot + 1);
    }
    used_[static_cast<std::size_t>(v)] = 0;
    sign_ = saved;
    ++rank;
  }
}

AlgebraElem eval_gd(const AlgebraElem& x, const std::vector<AlgebraElem>& ys) {
  GdEvaluator ev(x.alg(), static_cast<int>(ys.size()));
  ev.reset(x);
  return ev.eval(ys);
}

namespace {

// Shared by the serial and parallel degree-bound sweeps: decodes a flattened
// tuple index into basis-element pointers (last slot varies fastest).
void decode_tuple(long long idx, int dim, int d, const std::vector<AlgebraElem>& basis,
                  std::vector<const AlgebraElem*>& ys) {
  for (int slot = d - 1; slot >= 0; --slot) {
    ys[static_cast<std::size_t>(slot)] = &basis[static_cast<std::size_t>(idx % dim)];
    idx /= dim;
  }
}

std::vector<AlgebraElem> basis_cache(const AlgebraPtr& alg) {
  std::vector<AlgebraElem> basis;
  basis.reserve(static_cast<std::size_t>(alg->dim()));
  for (int i = 0; i < alg->dim(); ++i) basis.push_back(AlgebraElem::basis(alg, i));
  return basis;
}

long long int_pow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

bool is_alg_bounded_serial(const AlgebraElem& x, int d) {
  require_positive_degree(d);
  require_central_field(x.alg());
  const AlgebraPtr& alg = x.alg();
  const int dim = alg->dim();
  const long long total = int_pow(dim, d);
  const std::vector<AlgebraElem> basis = basis_cache(alg);
  GdEvaluator ev(alg, d);
  ev.reset(x);
  std::vector<const AlgebraElem*> ys(static_cast<std::size_t>(d));
  for (long long idx = 0; idx < total; ++idx) {
    decode_tuple(idx, dim, d, basis, ys);
    if (!ev.eval(ys.data()).is_zero()) return false;
  }
  return true;
}

namespace {

// Tuple sweep engine for the degree-bound test.  It computes the same
// alternating sum as GdEvaluator but regrouped: with y slots restricted to
// distinguished basis elements, every product x^v * b_g is precomputed once,
// and the sum is assembled layer by layer over subsets of the exponent set
// {0..d} (A[S] = the alternating sum over all ways to spend the exponents in
// S on the first |S| slots).  Layer ell depends only on the first ell tuple
// digits, so an odometer walk over tuples recomputes just the layers past the
// digit that changed.  The result per tuple is exactly eval_gd on that tuple.
class LayeredSweep {
public:
  LayeredSweep(const AlgebraPtr& alg, const AlgebraElem& x, int d)
      : alg_(alg), d_(d), dim_(alg->dim()), full_((1u << (d + 1)) - 1),
        zero_(alg), scratch_(alg), tmp_(alg) {
    powers_.assign(static_cast<std::size_t>(d_) + 1, AlgebraElem::unit(alg_));
    for (int i = 1; i <= d_; ++i)
      alg_->mul_into(powers_[static_cast<std::size_t>(i)],
                     powers_[static_cast<std::size_t>(i) - 1], x, ws_);
    ptable_.reserve(static_cast<std::size_t>(d_ + 1) * static_cast<std::size_t>(dim_));
    for (int v = 0; v <= d_; ++v)
      for (int g = 0; g < dim_; ++g) {
        AlgebraElem prod(alg_);
        alg_->mul_into(prod, powers_[static_cast<std::size_t>(v)], AlgebraElem::basis(alg_, g),
                       ws_);
        ptable_.push_back(std::move(prod));
      }
    layers_.assign(static_cast<std::size_t>(d_) + 2, {});
    for (unsigned mask = 1; mask <= full_; ++mask)
      layers_[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
    a_.assign(full_ + 1, AlgebraElem(alg_));
    a_[0] = AlgebraElem::unit(alg_);
    digits_.assign(static_cast<std::size_t>(d_), 0);
  }

  // Scans every tuple whose first digit is `first`, in canonical order.
  // Returns true as soon as one tuple evaluates nonzero.  `stop` (optional)
  // is polled between tuples so concurrent blocks can end early.
  bool block_has_witness(int first, const std::atomic<bool>* stop) {
    std::fill(digits_.begin(), digits_.end(), 0);
    digits_[0] = first;
    for (int ell = 1; ell <= d_ + 1; ++ell) recompute_layer(ell);
    for (;;) {
      if (!a_[full_].is_zero()) return true;
      if (stop && stop->load(std::memory_order_relaxed)) return false;
      int i = d_ - 1;
      while (i >= 1 && digits_[static_cast<std::size_t>(i)] == dim_ - 1) {
        digits_[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 1) return false;
      ++digits_[static_cast<std::size_t>(i)];
      for (int ell = i + 1; ell <= d_ + 1; ++ell) recompute_layer(ell);
    }
  }

private:
  // Rebuilds A[S] for all S of size ell.  Slot ell-1 carries x^v * y_ell for
  // ell <= d and the bare power x^v on the last slot.  Removing exponent v
  // from the end of the arrangement contributes one inversion per larger
  // exponent still in S, whence the parity below.
  void recompute_layer(int ell) {
    const AlgebraElem* table =
        ell <= d_ ? &ptable_[static_cast<std::size_t>(digits_[static_cast<std::size_t>(ell - 1)])]
                  : powers_.data();
    const std::size_t stride = ell <= d_ ? static_cast<std::size_t>(dim_) : 1;
    for (unsigned mask : layers_[static_cast<std::size_t>(ell)]) {
      scratch_ = zero_;
      for (int v = 0; v <= d_; ++v) {
        const unsigned bit = 1u << v;
        if (!(mask & bit)) continue;
        alg_->mul_into(tmp_, a_[mask ^ bit], table[static_cast<std::size_t>(v) * stride], ws_);
        if (std::popcount(mask >> (v + 1)) & 1)
          scratch_ -= tmp_;
        else
          scratch_ += tmp_;
      }
      std::swap(a_[mask], scratch_);
    }
  }

  AlgebraPtr alg_;
  int d_;
  int dim_;
  unsigned full_;
  AlgebraElem zero_, scratch_, tmp_;
  MulWorkspace ws_;
  std::vector<AlgebraElem> powers_;
  std::vector<AlgebraElem> ptable_;  // ptable_[v*dim + g] = x^v * basis g
  std::vector<std::vector<unsigned>> layers_;
  std::vector<AlgebraElem> a_;
  std::vector<int> digits_;
};

}  // namespace

bool is_alg_bounded(const AlgebraElem& x, int d) {
  require_positive_degree(d);
  require_central_field(x.alg());
  const AlgebraPtr& alg = x.alg();
  const int dim = alg->dim();
  std::atomic<bool> found{false};
  std::atomic<bool> broken{false};
  std::exception_ptr first_error = nullptr;
#pragma omp parallel default(shared)
  {
    std::optional<LayeredSweep> sweep;
    try {
      sweep.emplace(alg, x, d);
    } catch (...) {
#pragma omp critical(divalg_bounded_err)
      {
        if (!first_error) first_error = std::current_exception();
      }
      broken.store(true, std::memory_order_relaxed);
    }
#pragma omp for schedule(dynamic, 1)
    for (int first = 0; first < dim; ++first) {
      if (!sweep || found.load(std::memory_order_relaxed) ||
          broken.load(std::memory_order_relaxed))
        continue;
      try {
        if (sweep->block_has_witness(first, &found))
          found.store(true, std::memory_order_relaxed);
      } catch (...) {
#pragma omp critical(divalg_bounded_err)
        {
          if (!first_error) first_error = std::current_exception();
        }
        broken.store(true, std::memory_order_relaxed);
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return !found.load();
}

namespace {

constexpr long long kExhaustiveBudget = 100000000;  // tuples, exact-arithmetic desk scale

// Runs one x-block of an element sweep: resets the evaluator to elements[xi]
// and scans all inner y-combinations in canonical order, returning the first
// nonzero flattened index within the block, or -1.
long long sweep_x_block(GdEvaluator& ev, const std::vector<AlgebraElem>& elements, long long xi,
                        long long inner, int d, std::vector<const AlgebraElem*>& ys) {
  ev.reset(elements[static_cast<std::size_t>(xi)]);
  const long long n = static_cast<long long>(elements.size());
  for (long long y = 0; y < inner; ++y) {
    long long rest = y;
    for (int slot = d - 1; slot >= 0; --slot) {
      ys[static_cast<std::size_t>(slot)] = &elements[static_cast<std::size_t>(rest % n)];
      rest /= n;
    }
    if (!ev.eval(ys.data()).is_zero()) return xi * inner + y;
  }
  return -1;
}

GdSweep sweep_elements(const AlgebraPtr& alg, const std::vector<AlgebraElem>& elements, int d,
                       bool parallel) {
  const long long n = static_cast<long long>(elements.size());
  const long long inner = int_pow(n, d);
  GdSweep out;
  out.total = n * inner;
  if (n == 0) return out;
  if (!parallel) {
    GdEvaluator ev(alg, d);
    std::vector<const AlgebraElem*> ys(static_cast<std::size_t>(d));
    for (long long xi = 0; xi < n; ++xi) {
      const long long w = sweep_x_block(ev, elements, xi, inner, d, ys);
      if (w >= 0) {
        out.witness = w;
        return out;
      }
    }
    return out;
  }
  std::atomic<bool> broken{false};
  std::exception_ptr first_error = nullptr;
  long long best = -1;
#pragma omp parallel default(shared)
  {
    std::optional<GdEvaluator> ev;
    std::vector<const AlgebraElem*> ys(static_cast<std::size_t>(d));
    long long local_best = -1;
    try {
      ev.emplace(alg, d);
    } catch (...) {
#pragma omp critical(divalg_sweep_err)
      {
        if (!first_error) first_error = std::current_exception();
      }
      broken.store(true, std::memory_order_relaxed);
    }
#pragma omp for schedule(dynamic, 1)
    for (long long xi = 0; xi < n; ++xi) {
      if (!ev || broken.load(std::memory_order_relaxed)) continue;
      try {
        const long long w = sweep_x_block(*ev, elements, xi, inner, d, ys);
        if (w >= 0 && (local_best < 0 || w < local_best)) local_best = w;
      } catch (...) {
#pragma omp critical(divalg_sweep_err)
        {
          if (!first_error) first_error = std::current_exception();
        }
        broken.store(true, std::memory_order_relaxed);
      }
    }
#pragma omp critical(divalg_sweep_best)
    {
      if (local_best >= 0 && (best < 0 || local_best < best)) best = local_best;
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  out.witness = best;
  return out;
}

}  // namespace

GdSweep gd_exhaustive_sweep(const AlgebraPtr& alg, int d, bool parallel) {
  require_positive_degree(d);
  if (alg->ctx().kind() != FieldKind::Prime)
    fail(Err::ValidationError,
         "exhaustive sweeps enumerate every element and need a finite prime coefficient field");
  const long long p = alg->ctx().prime_modulus();
  const int dim = alg->dim();
  long long count = 1;
  for (int i = 0; i < dim; ++i) {
    if (count > kExhaustiveBudget / p) fail(Err::ValidationError, "exhaustive sweep budget exceeded");
    count *= p;
  }
  long long total = count;
  for (int i = 0; i < d; ++i) {
    if (total > kExhaustiveBudget / count)
      fail(Err::ValidationError, "exhaustive sweep budget exceeded");
    total *= count;
  }
  // Element index = coordinate vector read as base-p digits, coordinate 0 most
  // significant.
  std::vector<AlgebraElem> elements;
  elements.reserve(static_cast<std::size_t>(count));
  for (long long e = 0; e < count; ++e) {
    std::vector<std::int64_t> coords(static_cast<std::size_t>(dim));
    long long rest = e;
    for (int i = dim - 1; i >= 0; --i) {
      coords[static_cast<std::size_t>(i)] = rest % p;
      rest /= p;
    }
    elements.push_back(AlgebraElem::from_int_coords(alg, coords));
  }
  return sweep_elements(alg, elements, d, parallel);
}

GdSweep gd_random_sweep(const AlgebraPtr& alg, int d, long long count, int height,
                        std::uint64_t seed, bool parallel) {
  require_positive_degree(d);
  if (count < 0) fail(Err::ValidationError, "tuple count must be nonnegative");
  if (height < 1) fail(Err::ValidationError, "coordinate height must be at least 1");
  Sampler rng(seed);
  const int width = d + 1;
  std::vector<AlgebraElem> pool;
  pool.reserve(static_cast<std::size_t>(count * width));
  for (long long t = 0; t < count * width; ++t) pool.push_back(random_element(alg, height, rng));

  GdSweep out;
  out.total = count;
  auto run_tuple = [&](GdEvaluator& ev, std::vector<const AlgebraElem*>& ys, long long t) {
    const std::size_t base = static_cast<std::size_t>(t * width);
    ev.reset(pool[base]);
    for (int i = 0; i < d; ++i) ys[static_cast<std::size_t>(i)] = &pool[base + 1 + static_cast<std::size_t>(i)];
    return ev.eval(ys.data()).is_zero();
  };
  if (!parallel) {
    GdEvaluator ev(alg, d);
    std::vector<const AlgebraElem*> ys(static_cast<std::size_t>(d));
    for (long long t = 0; t < count; ++t) {
      if (!run_tuple(ev, ys, t)) {
        out.witness = t;
        return out;
      }
    }
    return out;
  }
  std::atomic<bool> broken{false};
  std::exception_ptr first_error = nullptr;
  long long best = -1;
#pragma omp parallel default(shared)
  {
    std::optional<GdEvaluator> ev;
    std::vector<const AlgebraElem*> ys(static_cast<std::size_t>(d));
    long long local_best = -1;
    try {
      ev.emplace(alg, d);
    } catch (...) {
#pragma omp critical(divalg_rand_err)
      {
        if (!first_error) first_error = std::current_exception();
      }
      broken.store(true, std::memory_order_relaxed);
    }
#pragma omp for schedule(dynamic, 16)
    for (long long t = 0; t < count; ++t) {
      if (!ev || broken.load(std::memory_order_relaxed)) continue;
      try {
        if (!run_tuple(*ev, ys, t) && (local_best < 0 || t < local_best)) local_best = t;
      } catch (...) {
#pragma omp critical(divalg_rand_err)
        {
          if (!first_error) first_error = std::current_exception();
        }
        broken.store(true, std::memory_order_relaxed);
      }
    }
#pragma omp critical(divalg_rand_best)
    {
      if (local_best >= 0 && (best < 0 || local_best < best)) best = local_best;
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  out.witness = best;
  return out;
}

AlgebraElem left_inverse_from_minpoly(const SubfieldCtx& ctx, const AlgebraElem& a) {
  const UPoly m = left_minpoly(ctx, a);
  const FieldElem k0 = m.coeff(0);
  if (k0.is_zero())
    fail(Err::ZeroConstantTerm,
         "left relation " + m.str() + " has no constant term; no inverse from it");
  const int d = m.degree();
  AlgebraElem bracket(ctx.alg);
  AlgebraElem apow = AlgebraElem::unit(ctx.alg);
  for (int i = 1; i <= d; ++i) {
    bracket += embed_k(ctx, m.coeff(i)) * apow;
    if (i < d) apow = apow * a;
  }
  const AlgebraElem inv = bracket * embed_k(ctx, (-k0).inverse());
  const AlgebraElem one = AlgebraElem::unit(ctx.alg);
  if (!(a * inv == one) || !(inv * a == one))
    fail(Err::ValidationError, "scaled bracket is not a two-sided inverse of a");
  return inv;
}

AlgebraElem cyclic_vector(const SubfieldCtx& ctx, const AlgebraElem& alpha) {
  require_member(ctx.alg, alpha, "alpha");
  const int n = ctx.k_degree;
  const UPoly m = minpoly_in_algebra(alpha);
  if (m.degree() != n || !is_irreducible(m))
    fail(Err::NotMaximalGenerator,
         "alpha needs an irreducible minimal polynomial of degree " + std::to_string(n) +
             ", got " + m.str());
  std::vector<AlgebraElem> apow;
  apow.push_back(AlgebraElem::unit(ctx.alg));
  for (int i = 1; i < n; ++i) apow.push_back(apow.back() * alpha);

  auto independent = [&](const AlgebraElem& u) {
    Matrix M(ctx.k_ctx, n, n);
    for (int c = 0; c < n; ++c) {
      const auto col = k_coordinates(ctx, u * apow[static_cast<std::size_t>(c)], Side::Left);
      for (int r = 0; r < n; ++r) M.at(r, c) = col[static_cast<std::size_t>(r)];
    }
    return rank(M) == n;
  };

  const int dim = ctx.alg->dim();
  for (int g = 0; g < dim; ++g) {
    const AlgebraElem u = AlgebraElem::basis(ctx.alg, g);
    if (independent(u)) return u;
  }
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const AlgebraElem u = AlgebraElem::basis(ctx.alg, i) + AlgebraElem::basis(ctx.alg, j);
      if (independent(u)) return u;
    }
  fail(Err::SearchExhausted,
       "no cyclic vector among the " + std::to_string(dim + dim * (dim - 1) / 2) +
           " scanned candidates");
}

DegreeProfile degree_profile(const SubfieldCtx& ctx, const std::vector<AlgebraElem>& sample) {
  DegreeProfile p;
  p.sample_size = static_cast<int>(sample.size());
  for (const AlgebraElem& x : sample) {
    const int df = minpoly_element(x).degree();
    const int dl = left_minpoly(ctx, x).degree();
    if (df > p.max_deg_f) {
      p.max_deg_f = df;
      p.arg_max_deg_f = x;
    }
    if (dl > p.max_ldeg_k) {
      p.max_ldeg_k = dl;
      p.arg_max_ldeg_k = x;
    }
  }
  return p;
}

DegreeProfile degree_profile(const SubfieldCtx& ctx, Sampler& rng, int size, int height,
                             bool include_conjugate_witness) {
  std::vector<AlgebraElem> sample;
  sample.reserve(static_cast<std::size_t>(size) + 1);
  for (int t = 0; t < size; ++t) sample.push_back(random_element(ctx.alg, height, rng));
  if (include_conjugate_witness) {
    const AlgebraElem u = cyclic_vector(ctx, ctx.generator);
    if (auto uinv = alg_inverse(u)) sample.push_back(u * ctx.generator * *uinv);
  }
  return degree_profile(ctx, sample);
}

}  // namespace divalg
