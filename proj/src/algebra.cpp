#include "divalg/algebra.hpp"

#include <sstream>

namespace divalg {

namespace {

void require_same_algebra(const AlgebraElem& a, const AlgebraElem& b) {
  if (a.alg() == b.alg()) return;
  if (a.alg() && b.alg() && a.alg()->same_structure(*b.alg())) return;
  fail(Err::AlgebraMismatch, "elements belong to different algebras");
}

}  // namespace

// ---------------------------------------------------------------------------
// AlgebraDef construction

AlgebraPtr AlgebraDef::make(const FieldCtx& ctx, int dim, std::vector<std::string> names,
                            const std::vector<std::vector<std::vector<FieldElem>>>& constants,
                            const std::vector<FieldElem>* unit_coords) {
  if (dim < 1) fail(Err::ShapeMismatch, "algebra dimension must be >= 1");
  if (static_cast<int>(names.size()) != dim)
    fail(Err::ShapeMismatch, "need one basis name per dimension");
  if (static_cast<int>(constants.size()) != dim)
    fail(Err::ShapeMismatch, "structure constant table must be dim x dim x dim");
  AlgebraDef def;
  def.ctx_ = ctx;
  def.dim_ = dim;
  def.kind_ = Kind::Table;
  def.names_ = std::move(names);
  def.table_.assign(static_cast<std::size_t>(dim) * dim, {});
  for (int i = 0; i < dim; ++i) {
    if (static_cast<int>(constants[static_cast<std::size_t>(i)].size()) != dim)
      fail(Err::ShapeMismatch, "structure constant table must be dim x dim x dim");
    for (int j = 0; j < dim; ++j) {
      const auto& row = constants[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (static_cast<int>(row.size()) != dim)
        fail(Err::ShapeMismatch, "structure constant table must be dim x dim x dim");
      for (int k = 0; k < dim; ++k) {
        const FieldElem& c = row[static_cast<std::size_t>(k)];
        if (c.ctx() != ctx) fail(Err::ContextMismatch, "structure constant from a different field");
        if (c.is_zero()) continue;
        int shortcut = 0;
        if (c.is_one()) shortcut = 1;
        else if ((-c).is_one()) shortcut = -1;
        def.table_[static_cast<std::size_t>(i) * dim + j].push_back(Ent{k, c, shortcut});
      }
    }
  }
  return finish(std::move(def), unit_coords);
}

AlgebraPtr AlgebraDef::finish(AlgebraDef&& def, const std::vector<FieldElem>* unit_coords) {
  def.verify_associativity();
  def.resolve_unit(unit_coords);
  def.compute_center();
  return std::make_shared<const AlgebraDef>(std::move(def));
}

FieldElem AlgebraDef::constant(int i, int j, int k) const {
  for (const Ent& e : table(i, j))
    if (e.k == k) return e.c;
  return FieldElem::zero(ctx_);
}

namespace {

// coords += c * (e_m * e_k) expressed through the table.
void axpy_product(const AlgebraDef& alg, std::vector<FieldElem>& coords, const FieldElem& c,
                  int m, int k) {
  for (const AlgebraDef::Ent& e : alg.table(m, k))
    coords[static_cast<std::size_t>(e.k)] += c * e.c;
}

}  // namespace

void AlgebraDef::verify_associativity() const {
  std::vector<FieldElem> lhs, rhs;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        lhs.assign(static_cast<std::size_t>(dim_), FieldElem::zero(ctx_));
        rhs.assign(static_cast<std::size_t>(dim_), FieldElem::zero(ctx_));
        for (const Ent& e : table(i, j)) axpy_product(*this, lhs, e.c, e.k, k);
        for (const Ent& e : table(j, k)) axpy_product(*this, rhs, e.c, i, e.k);
        if (lhs != rhs)
          fail(Err::NotAssociative,
               "structure constants are not associative at basis triple (" +
                   names_[static_cast<std::size_t>(i)] + ", " + names_[static_cast<std::size_t>(j)] +
                   ", " + names_[static_cast<std::size_t>(k)] + ")");
      }
}

void AlgebraDef::resolve_unit(const std::vector<FieldElem>* unit_coords) {
  if (unit_coords) {
    if (static_cast<int>(unit_coords->size()) != dim_)
      fail(Err::ShapeMismatch, "unit coordinate vector has wrong length");
    unit_ = *unit_coords;
  } else {
    // Solve u e_i = e_i and e_i u = e_i for all i.
    Matrix A(ctx_, 2 * dim_ * dim_, dim_);
    Matrix b(ctx_, 2 * dim_ * dim_, 1);
    int row = 0;
    for (int i = 0; i < dim_; ++i)
      for (int k = 0; k < dim_; ++k) {
        for (int m = 0; m < dim_; ++m) {
          A.at(row, m) = constant(m, i, k);
          A.at(row + 1, m) = constant(i, m, k);
        }
        if (i == k) {
          b.at(row, 0) = FieldElem::one(ctx_);
          b.at(row + 1, 0) = FieldElem::one(ctx_);
        }
        row += 2;
      }
    auto u = solve_linear(A, b);
    if (!u) fail(Err::NoUnit, "algebra has no two-sided unit");
    unit_.clear();
    for (int m = 0; m < dim_; ++m) unit_.push_back(u->at(m, 0));
  }
  // Verify the unit acts as identity on the basis from both sides.
  std::vector<FieldElem> acc;
  for (int i = 0; i < dim_; ++i) {
    for (int side = 0; side < 2; ++side) {
      acc.assign(static_cast<std::size_t>(dim_), FieldElem::zero(ctx_));
      for (int m = 0; m < dim_; ++m) {
        if (unit_[static_cast<std::size_t>(m)].is_zero()) continue;
        if (side == 0)
          axpy_product(*this, acc, unit_[static_cast<std::size_t>(m)], m, i);
        else
          axpy_product(*this, acc, unit_[static_cast<std::size_t>(m)], i, m);
      }
      for (int k = 0; k < dim_; ++k) {
        const bool want_one = k == i;
        if (acc[static_cast<std::size_t>(k)].is_one() != want_one ||
            (!want_one && !acc[static_cast<std::size_t>(k)].is_zero()))
          fail(Err::NoUnit, "provided unit is not a two-sided identity");
      }
    }
  }
}

void AlgebraDef::compute_center() {
  // z is central iff z e_g = e_g z for every basis element g.
  Matrix A(ctx_, dim_ * dim_, dim_);
  for (int g = 0; g < dim_; ++g)
    for (int k = 0; k < dim_; ++k) {
      const int row = g * dim_ + k;
      for (int m = 0; m < dim_; ++m)
        A.at(row, m) = constant(m, g, k) - constant(g, m, k);
    }
  for (const Matrix& v : nullspace(A)) {
    std::vector<FieldElem> coords;
    for (int m = 0; m < dim_; ++m) coords.push_back(v.at(m, 0));
    center_.push_back(std::move(coords));
  }
  commutative_ = static_cast<int>(center_.size()) == dim_;
}

const FieldElem& AlgebraDef::quat_a() const {
  if (kind_ != Kind::Quaternion) fail(Err::ValidationError, "not a quaternion algebra");
  return quat_params_[0];
}

const FieldElem& AlgebraDef::quat_b() const {
  if (kind_ != Kind::Quaternion) fail(Err::ValidationError, "not a quaternion algebra");
  return quat_params_[1];
}

int AlgebraDef::matrix_size() const {
  if (kind_ != Kind::MatrixAlg) fail(Err::ValidationError, "not a matrix algebra");
  return matrix_n_;
}

bool AlgebraDef::same_structure(const AlgebraDef& o) const {
  if (ctx_ != o.ctx_ || dim_ != o.dim_ || names_ != o.names_) return false;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const auto& ta = table(i, j);
      const auto& tb = o.table(i, j);
      if (ta.size() != tb.size()) return false;
      for (std::size_t s = 0; s < ta.size(); ++s)
        if (ta[s].k != tb[s].k || ta[s].c != tb[s].c) return false;
    }
  return true;
}

void AlgebraDef::mul_into(AlgebraElem& dst, const AlgebraElem& x, const AlgebraElem& y,
                          MulWorkspace& ws) const {
  require_same_algebra(x, y);
  if (dst.alg().get() != this && !(dst.alg() && dst.alg()->same_structure(*this)))
    fail(Err::AlgebraMismatch, "destination belongs to a different algebra");
  if (ws.zero.ctx() != ctx_ || !ws.zero.is_zero()) ws.zero = FieldElem::zero(ctx_);
  ws.acc.resize(static_cast<std::size_t>(dim_), ws.zero);
  for (int k = 0; k < dim_; ++k) ws.acc[static_cast<std::size_t>(k)] = ws.zero;
  for (int i = 0; i < dim_; ++i) {
    const FieldElem& xi = x.coord(i);
    if (xi.is_zero()) continue;
    for (int j = 0; j < dim_; ++j) {
      const FieldElem& yj = y.coord(j);
      if (yj.is_zero()) continue;
      const auto& ents = table(i, j);
      if (ents.empty()) continue;
      ws.t = xi;
      ws.t *= yj;
      for (const Ent& e : ents) {
        FieldElem& out = ws.acc[static_cast<std::size_t>(e.k)];
        if (e.shortcut == 1) {
          out += ws.t;
        } else if (e.shortcut == -1) {
          out -= ws.t;
        } else {
          ws.t2 = ws.t;
          ws.t2 *= e.c;
          out += ws.t2;
        }
      }
    }
  }
  std::swap(dst.c_, ws.acc);
}

// ---------------------------------------------------------------------------
// Constructors for the standard families

AlgebraPtr quaternion_algebra(const FieldCtx& ctx, const FieldElem& a, const FieldElem& b) {
  if (ctx.characteristic() == 2)
    fail(Err::CharacteristicTwo, "quaternion algebras need characteristic != 2");
  if (a.ctx() != ctx || b.ctx() != ctx)
    fail(Err::ContextMismatch, "quaternion parameters from a different field");
  if (a.is_zero() || b.is_zero())
    fail(Err::ZeroParameter, "quaternion parameters must be nonzero");
  AlgebraDef def;
  def.ctx_ = ctx;
  def.dim_ = 4;
  def.kind_ = AlgebraDef::Kind::Quaternion;
  def.names_ = {"1", "i", "j", "k"};
  def.quat_params_ = {a, b};
  def.table_.assign(16, {});
  const FieldElem one = FieldElem::one(ctx);
  const FieldElem ab = a * b;
  auto set = [&def](int i, int j, int k, const FieldElem& c) {
    int shortcut = 0;
    if (c.is_one()) shortcut = 1;
    else if ((-c).is_one()) shortcut = -1;
    def.table_[static_cast<std::size_t>(i) * 4 + j].push_back(AlgebraDef::Ent{k, c, shortcut});
  };
  // Indices: 0 = 1, 1 = i, 2 = j, 3 = k = ij.
  for (int m = 0; m < 4; ++m) {
    set(0, m, m, one);
    if (m != 0) set(m, 0, m, one);
  }
  set(1, 1, 0, a);        // i^2 = a
  set(2, 2, 0, b);        // j^2 = b
  set(3, 3, 0, -ab);      // k^2 = -ab
  set(1, 2, 3, one);      // ij = k
  set(2, 1, 3, -one);     // ji = -k
  set(1, 3, 2, a);        // ik = aj
  set(3, 1, 2, -a);       // ki = -aj
  set(2, 3, 1, -b);       // jk = -bi
  set(3, 2, 1, b);        // kj = bi
  std::vector<FieldElem> unit = {one, FieldElem::zero(ctx), FieldElem::zero(ctx),
                                 FieldElem::zero(ctx)};
  return AlgebraDef::finish(std::move(def), &unit);
}

AlgebraPtr matrix_algebra(const FieldCtx& ctx, int n) {
  if (n < 1) fail(Err::ShapeMismatch, "matrix algebra needs n >= 1");
  AlgebraDef def;
  def.ctx_ = ctx;
  def.dim_ = n * n;
  def.kind_ = AlgebraDef::Kind::MatrixAlg;
  def.matrix_n_ = n;
  const FieldElem one = FieldElem::one(ctx);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      def.names_.push_back("e" + std::to_string(r + 1) + std::to_string(c + 1));
  def.table_.assign(static_cast<std::size_t>(n) * n * n * n, {});
  // e_{rc} e_{c'd} = [c == c'] e_{rd}
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) {
        const int i = r * n + c, j = c * n + d, k = r * n + d;
        def.table_[static_cast<std::size_t>(i) * def.dim_ + j].push_back(
            AlgebraDef::Ent{k, one, 1});
      }
  std::vector<FieldElem> unit(static_cast<std::size_t>(def.dim_), FieldElem::zero(ctx));
  for (int r = 0; r < n; ++r) unit[static_cast<std::size_t>(r) * n + r] = one;
  return AlgebraDef::finish(std::move(def), &unit);
}

// ---------------------------------------------------------------------------
// AlgebraElem

AlgebraElem::AlgebraElem(AlgebraPtr alg) : alg_(std::move(alg)) {
  c_.assign(static_cast<std::size_t>(alg_->dim()), FieldElem::zero(alg_->ctx()));
}

AlgebraElem AlgebraElem::basis(const AlgebraPtr& alg, int idx) {
  if (idx < 0 || idx >= alg->dim()) fail(Err::ShapeMismatch, "basis index out of range");
  AlgebraElem x(alg);
  x.c_[static_cast<std::size_t>(idx)] = FieldElem::one(alg->ctx());
  return x;
}

AlgebraElem AlgebraElem::unit(const AlgebraPtr& alg) {
  AlgebraElem x(alg);
  x.c_ = alg->unit_coords();
  return x;
}

AlgebraElem AlgebraElem::scalar(const AlgebraPtr& alg, const FieldElem& c) {
  return unit(alg).scaled(c);
}

AlgebraElem AlgebraElem::from_coords(const AlgebraPtr& alg, std::vector<FieldElem> coords) {
  if (static_cast<int>(coords.size()) != alg->dim())
    fail(Err::ShapeMismatch, "coordinate vector has wrong length");
  for (const FieldElem& c : coords)
    if (c.ctx() != alg->ctx()) fail(Err::ContextMismatch, "coordinate from a different field");
  AlgebraElem x(alg);
  x.c_ = std::move(coords);
  return x;
}

AlgebraElem AlgebraElem::from_int_coords(const AlgebraPtr& alg,
                                         const std::vector<std::int64_t>& coords) {
  std::vector<FieldElem> c;
  c.reserve(coords.size());
  for (std::int64_t v : coords) c.push_back(FieldElem::from_int(alg->ctx(), v));
  return from_coords(alg, std::move(c));
}

bool AlgebraElem::is_zero() const {
  for (const FieldElem& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

bool AlgebraElem::is_unit_one() const { return c_ == alg_->unit_coords(); }

AlgebraElem AlgebraElem::operator-() const {
  AlgebraElem r = *this;
  for (FieldElem& x : r.c_) x = -x;
  return r;
}

AlgebraElem& AlgebraElem::operator+=(const AlgebraElem& o) {
  require_same_algebra(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

AlgebraElem& AlgebraElem::operator-=(const AlgebraElem& o) {
  require_same_algebra(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

AlgebraElem operator+(AlgebraElem a, const AlgebraElem& b) { return a += b; }
AlgebraElem operator-(AlgebraElem a, const AlgebraElem& b) { return a -= b; }

AlgebraElem operator*(const AlgebraElem& a, const AlgebraElem& b) {
  static thread_local MulWorkspace ws;
  AlgebraElem r(a.alg());
  a.alg()->mul_into(r, a, b, ws);
  return r;
}

AlgebraElem AlgebraElem::scaled(const FieldElem& c) const {
  if (c.ctx() != ctx()) fail(Err::ContextMismatch, "scalar from a different field");
  AlgebraElem r = *this;
  for (FieldElem& x : r.c_) x *= c;
  return r;
}

bool AlgebraElem::operator==(const AlgebraElem& o) const {
  if (alg_ != o.alg_ && !(alg_ && o.alg_ && alg_->same_structure(*o.alg_))) return false;
  return c_ == o.c_;
}

std::string AlgebraElem::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  const bool rational = ctx().is_rational();
  for (int m = 0; m < dim(); ++m) {
    const FieldElem& c = c_[static_cast<std::size_t>(m)];
    if (c.is_zero()) continue;
    std::string cs = c.str();
    bool neg = false;
    if (rational && cs.front() == '-') {
      neg = true;
      cs.erase(cs.begin());
    }
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    const std::string& name = alg_->names()[static_cast<std::size_t>(m)];
    if (name == "1") {
      out << cs;
    } else if (cs == "1") {
      out << name;
    } else {
      if (cs.find(' ') != std::string::npos) out << "(" << cs << ")";
      else out << cs;
      out << "*" << name;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Minimal polynomials, inverses, commutators

UPoly minpoly_in_algebra(const AlgebraElem& x) {
  const FieldCtx& ctx = x.ctx();
  const int dim = x.dim();
  std::vector<AlgebraElem> powers;
  powers.push_back(AlgebraElem::unit(x.alg()));
  AlgebraElem p = powers.back();
  for (int k = 1; k <= dim; ++k) {
    p = p * x;
    Matrix base(ctx, dim, k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < dim; ++i) base.at(i, j) = powers[static_cast<std::size_t>(j)].coord(i);
    Matrix target(ctx, dim, 1);
    for (int i = 0; i < dim; ++i) target.at(i, 0) = p.coord(i);
    if (auto sol = solve_linear(base, target)) {
      std::vector<FieldElem> coeffs;
      coeffs.reserve(static_cast<std::size_t>(k) + 1);
      for (int i = 0; i < k; ++i) coeffs.push_back(-sol->at(i, 0));
      coeffs.push_back(FieldElem::one(ctx));
      return UPoly(ctx, std::move(coeffs));
    }
    powers.push_back(p);
  }
  fail(Err::ShapeMismatch, "internal: power sequence did not close up");
}

std::optional<AlgebraElem> alg_inverse(const AlgebraElem& x) {
  if (x.is_zero()) return std::nullopt;
  const UPoly m = minpoly_in_algebra(x);
  const FieldElem c0 = m.coeff(0);
  if (c0.is_zero()) return std::nullopt;  // x divides zero
  // m(x) = 0 gives x * q(x) = -c0 with q = (m - c0) / t, hence
  // x^{-1} = q(x) * (-c0^{-1}); q commutes with x, so it is two-sided.
  std::vector<FieldElem> qc;
  for (int i = 1; i <= m.degree(); ++i) qc.push_back(m.coeff(i));
  const UPoly q(x.ctx(), std::move(qc));
  AlgebraElem inv = poly_eval_elem(q, x).scaled(-c0.inverse());
  return inv;
}

std::pair<AlgebraElem, AlgebraElem> commutators(const AlgebraElem& x, const AlgebraElem& y) {
  require_same_algebra(x, y);
  auto xi = alg_inverse(x);
  if (!xi) fail(Err::NotInvertible, "first argument is not invertible");
  auto yi = alg_inverse(y);
  if (!yi) fail(Err::NotInvertible, "second argument is not invertible");
  AlgebraElem mult = x * y * *xi * *yi;
  AlgebraElem add = x * y - y * x;
  return {std::move(mult), std::move(add)};
}

bool is_central(const AlgebraElem& x) {
  for (int g = 0; g < x.dim(); ++g) {
    const AlgebraElem e = AlgebraElem::basis(x.alg(), g);
    if (x * e != e * x) return false;
  }
  return true;
}

std::vector<AlgebraElem> center_basis(const AlgebraPtr& alg) {
  std::vector<AlgebraElem> out;
  for (const auto& coords : alg->center_coords())
    out.push_back(AlgebraElem::from_coords(alg, coords));
  return out;
}

AlgebraElem poly_eval_elem(const UPoly& f, const AlgebraElem& x) {
  if (f.ctx() != x.ctx()) fail(Err::ContextMismatch, "polynomial over a different field");
  AlgebraElem acc(x.alg());
  for (int i = f.degree(); i >= 0; --i) {
    acc = acc * x;
    const FieldElem c = f.coeff(i);
    if (!c.is_zero()) acc += AlgebraElem::scalar(x.alg(), c);
  }
  return acc;
}

AlgebraElem random_element(const AlgebraPtr& alg, int height, Sampler& rng) {
  if (height < 1) fail(Err::ValidationError, "sampling height must be >= 1");
  std::vector<std::int64_t> coords;
  coords.reserve(static_cast<std::size_t>(alg->dim()));
  for (int i = 0; i < alg->dim(); ++i) coords.push_back(rng.uniform_int(-height, height));
  return AlgebraElem::from_int_coords(alg, coords);
}

AlgebraElem random_element(const AlgebraPtr& alg, int height, std::uint64_t seed) {
  Sampler rng(seed);
  return random_element(alg, height, rng);
}

}  // namespace divalg
