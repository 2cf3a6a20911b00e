#include "divalg/exactfield.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace divalg {

namespace {

bool is_prime_i64(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  // Extended Euclid on (a, p); a in [1, p).
  std::int64_t r0 = a, r1 = p, s0 = 1, s1 = 0;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
  }
  if (r0 != 1) fail(Err::DivisionByZero, "residue has no inverse (modulus not prime?)");
  return ((s0 % p) + p) % p;
}

void require_same_ctx(const FieldCtx& a, const FieldCtx& b) {
  if (a != b)
    fail(Err::ContextMismatch,
         "operands live in different fields: " + a.describe() + " vs " + b.describe());
}

}  // namespace

const char* err_name(Err kind) {
  switch (kind) {
    case Err::ContextMismatch: return "ContextMismatch";
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::ZeroPolynomial: return "ZeroPolynomial";
    case Err::NotMonic: return "NotMonic";
    case Err::UnsupportedDegree: return "UnsupportedDegree";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::NotSquare: return "NotSquare";
    case Err::NotNonderogatory: return "NotNonderogatory";
    case Err::NotAssociative: return "NotAssociative";
    case Err::NoUnit: return "NoUnit";
    case Err::AlgebraMismatch: return "AlgebraMismatch";
    case Err::CharacteristicTwo: return "CharacteristicTwo";
    case Err::ZeroParameter: return "ZeroParameter";
    case Err::NotInvertible: return "NotInvertible";
    case Err::CenterNotField: return "CenterNotField";
    case Err::CentralGenerator: return "CentralGenerator";
    case Err::NotIrreducible: return "NotIrreducible";
    case Err::WrongDegree: return "WrongDegree";
    case Err::DimensionNotSquare: return "DimensionNotSquare";
    case Err::ZeroElement: return "ZeroElement";
    case Err::ZeroConstantTerm: return "ZeroConstantTerm";
    case Err::NotMaximalGenerator: return "NotMaximalGenerator";
    case Err::SearchExhausted: return "SearchExhausted";
    case Err::CentralElement: return "CentralElement";
    case Err::NotAField: return "NotAField";
    case Err::NotGenerating: return "NotGenerating";
    case Err::BadBlockStructure: return "BadBlockStructure";
    case Err::AlphabetMismatch: return "AlphabetMismatch";
    case Err::DegreeTooLarge: return "DegreeTooLarge";
    case Err::StepBudgetExceeded: return "StepBudgetExceeded";
    case Err::SyntaxError: return "SyntaxError";
    case Err::ValidationError: return "ValidationError";
    case Err::UnknownSymbol: return "UnknownSymbol";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// FieldCtx

FieldCtx::FieldCtx() = default;

FieldCtx FieldCtx::rational() { return FieldCtx(); }

FieldCtx FieldCtx::prime(std::int64_t p) {
  if (p < 2 || p > ((std::int64_t{1} << 31) - 1))
    fail(Err::ValidationError, "prime modulus must lie in [2, 2^31-1], got " + std::to_string(p));
  if (!is_prime_i64(p)) fail(Err::ValidationError, std::to_string(p) + " is not prime");
  FieldCtx ctx;
  ctx.kind_ = FieldKind::Prime;
  ctx.p_ = p;
  return ctx;
}

FieldCtx FieldCtx::extension(const UPoly& modulus, const std::string& var) {
  // Irreducibility is the caller's responsibility (build_subfield certifies it
  // before constructing the field); we still insist on a monic modulus of
  // degree >= 1 so that reduction is well defined.
  if (modulus.degree() < 1) fail(Err::ZeroPolynomial, "extension modulus must have degree >= 1");
  if (!modulus.is_monic()) fail(Err::NotMonic, "extension modulus must be monic");
  FieldCtx ctx;
  ctx.kind_ = FieldKind::Extension;
  ctx.ext_ = std::make_shared<ExtCtxInfo>(ExtCtxInfo{modulus.ctx(), modulus, var});
  return ctx;
}

std::int64_t FieldCtx::prime_modulus() const {
  if (kind_ != FieldKind::Prime) fail(Err::ContextMismatch, "prime_modulus on non-prime field");
  return p_;
}

const FieldCtx& FieldCtx::base() const {
  if (kind_ != FieldKind::Extension) fail(Err::ContextMismatch, "base on non-extension field");
  return ext_->base;
}

const UPoly& FieldCtx::ext_modulus() const {
  if (kind_ != FieldKind::Extension) fail(Err::ContextMismatch, "ext_modulus on non-extension field");
  return ext_->modulus;
}

const std::string& FieldCtx::ext_var() const {
  if (kind_ != FieldKind::Extension) fail(Err::ContextMismatch, "ext_var on non-extension field");
  return ext_->var;
}

int FieldCtx::ext_degree() const { return ext_modulus().degree(); }

std::int64_t FieldCtx::characteristic() const {
  switch (kind_) {
    case FieldKind::Rational: return 0;
    case FieldKind::Prime: return p_;
    case FieldKind::Extension: return ext_->base.characteristic();
  }
  return 0;
}

bool FieldCtx::operator==(const FieldCtx& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case FieldKind::Rational: return true;
    case FieldKind::Prime: return p_ == o.p_;
    case FieldKind::Extension:
      return ext_ == o.ext_ ||
             (ext_->base == o.ext_->base && ext_->modulus == o.ext_->modulus);
  }
  return false;
}

std::string FieldCtx::describe() const {
  switch (kind_) {
    case FieldKind::Rational: return "Q";
    case FieldKind::Prime: return "F_" + std::to_string(p_);
    case FieldKind::Extension:
      return ext_->base.describe() + "(" + ext_->var + " : " +
             ext_->modulus.str(ext_->var) + " = 0)";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// FieldElem

FieldElem FieldElem::zero(const FieldCtx& ctx) { return from_int(ctx, 0); }
FieldElem FieldElem::one(const FieldCtx& ctx) { return from_int(ctx, 1); }

FieldElem FieldElem::from_int(const FieldCtx& ctx, std::int64_t n) {
  switch (ctx.kind()) {
    case FieldKind::Rational: return FieldElem(ctx, mpq_class(static_cast<long>(n)));
    case FieldKind::Prime: {
      const std::int64_t p = ctx.prime_modulus();
      return FieldElem(ctx, ((n % p) + p) % p);
    }
    case FieldKind::Extension: {
      const FieldElem c = from_int(ctx.base(), n);
      UPoly rep = c.is_zero() ? UPoly(ctx.base()) : UPoly::constant(c);
      return FieldElem(ctx, std::make_shared<const UPoly>(std::move(rep)));
    }
  }
  fail(Err::ContextMismatch, "bad field kind");
}

FieldElem FieldElem::from_mpq(const FieldCtx& ctx, const mpq_class& q) {
  if (!ctx.is_rational()) fail(Err::ContextMismatch, "rational literal in " + ctx.describe());
  mpq_class v = q;
  v.canonicalize();
  return FieldElem(ctx, std::move(v));
}

FieldElem FieldElem::from_rep(const FieldCtx& ext_ctx, const UPoly& rep) {
  if (!ext_ctx.is_extension()) fail(Err::ContextMismatch, "from_rep needs an extension field");
  if (rep.ctx() != ext_ctx.base()) fail(Err::ContextMismatch, "representative over wrong base field");
  UPoly reduced = divmod(rep, ext_ctx.ext_modulus()).second;
  return FieldElem(ext_ctx, std::make_shared<const UPoly>(std::move(reduced)));
}

const UPoly& FieldElem::ext_rep() const { return *std::get<std::shared_ptr<const UPoly>>(v_); }

FieldElem FieldElem::parse(const FieldCtx& ctx, std::string_view text) {
  // Trim surrounding whitespace.
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) fail(Err::SyntaxError, "empty scalar literal");

  auto is_digits = [](std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };

  std::string_view body = text;
  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  std::string_view num = body, den;
  const auto slash = body.find('/');
  if (slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!is_digits(num) || (slash != std::string_view::npos && !is_digits(den)))
    fail(Err::SyntaxError, "malformed scalar literal '" + std::string(text) + "'");

  switch (ctx.kind()) {
    case FieldKind::Rational: {
      mpz_class num_z(std::string(num), 10);
      mpz_class den_z = 1;
      if (slash != std::string_view::npos) den_z = mpz_class(std::string(den), 10);
      if (den_z == 0) fail(Err::SyntaxError, "zero denominator in '" + std::string(text) + "'");
      mpq_class q(num_z, den_z);
      q.canonicalize();
      if (negative) q = -q;
      return FieldElem(ctx, std::move(q));
    }
    case FieldKind::Prime: {
      if (slash != std::string_view::npos)
        fail(Err::SyntaxError, "fractional literal '" + std::string(text) +
                                   "' in prime field; use residues");
      mpz_class z(std::string(num), 10);
      std::int64_t r = static_cast<std::int64_t>(
          mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(ctx.prime_modulus())));
      if (negative && r != 0) r = ctx.prime_modulus() - r;
      return FieldElem(ctx, r);
    }
    case FieldKind::Extension: {
      const FieldElem c = parse(ctx.base(), text);
      UPoly rep = c.is_zero() ? UPoly(ctx.base()) : UPoly::constant(c);
      return FieldElem(ctx, std::make_shared<const UPoly>(std::move(rep)));
    }
  }
  fail(Err::ContextMismatch, "bad field kind");
}

bool FieldElem::is_zero() const {
  switch (ctx_.kind()) {
    case FieldKind::Rational: return mpq_sgn(rat().get_mpq_t()) == 0;
    case FieldKind::Prime: return res() == 0;
    case FieldKind::Extension: return ext_rep().is_zero();
  }
  return false;
}

bool FieldElem::is_one() const {
  switch (ctx_.kind()) {
    case FieldKind::Rational: return mpq_cmp_si(rat().get_mpq_t(), 1, 1) == 0;
    case FieldKind::Prime: return res() == 1;
    case FieldKind::Extension: {
      const UPoly& r = ext_rep();
      return r.degree() == 0 && r.coeff(0).is_one();
    }
  }
  return false;
}

FieldElem FieldElem::operator-() const {
  switch (ctx_.kind()) {
    case FieldKind::Rational: {
      mpq_class v;
      mpq_neg(v.get_mpq_t(), rat().get_mpq_t());
      return FieldElem(ctx_, std::move(v));
    }
    case FieldKind::Prime: {
      const std::int64_t r = res();
      return FieldElem(ctx_, r == 0 ? 0 : ctx_.prime_modulus() - r);
    }
    case FieldKind::Extension:
      return FieldElem(ctx_, std::make_shared<const UPoly>(-ext_rep()));
  }
  return *this;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  require_same_ctx(ctx_, o.ctx_);
  switch (ctx_.kind()) {
    case FieldKind::Rational: rat_mut() += o.rat(); break;
    case FieldKind::Prime: v_ = (res() + o.res()) % ctx_.prime_modulus(); break;
    case FieldKind::Extension:
      v_ = std::make_shared<const UPoly>(ext_rep() + o.ext_rep());
      break;
  }
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  require_same_ctx(ctx_, o.ctx_);
  switch (ctx_.kind()) {
    case FieldKind::Rational: rat_mut() -= o.rat(); break;
    case FieldKind::Prime: {
      const std::int64_t p = ctx_.prime_modulus();
      v_ = (res() - o.res() + p) % p;
      break;
    }
    case FieldKind::Extension:
      v_ = std::make_shared<const UPoly>(ext_rep() - o.ext_rep());
      break;
  }
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  require_same_ctx(ctx_, o.ctx_);
  switch (ctx_.kind()) {
    case FieldKind::Rational: rat_mut() *= o.rat(); break;
    case FieldKind::Prime: v_ = (res() * o.res()) % ctx_.prime_modulus(); break;
    case FieldKind::Extension: {
      UPoly prod = divmod(ext_rep() * o.ext_rep(), ctx_.ext_modulus()).second;
      v_ = std::make_shared<const UPoly>(std::move(prod));
      break;
    }
  }
  return *this;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) fail(Err::DivisionByZero, "inverse of zero in " + ctx_.describe());
  switch (ctx_.kind()) {
    case FieldKind::Rational: {
      mpq_class v;
      mpq_inv(v.get_mpq_t(), rat().get_mpq_t());
      return FieldElem(ctx_, std::move(v));
    }
    case FieldKind::Prime:
      return FieldElem(ctx_, mod_inverse(res(), ctx_.prime_modulus()));
    case FieldKind::Extension: {
      XgcdResult x = poly_xgcd(ext_rep(), ctx_.ext_modulus());
      if (x.g.degree() != 0)
        fail(Err::NotIrreducible, "extension modulus is reducible; element has no inverse");
      // g is monic constant 1 after normalization, so s * rep = 1 mod modulus.
      UPoly inv = divmod(x.s, ctx_.ext_modulus()).second;
      return FieldElem(ctx_, std::make_shared<const UPoly>(std::move(inv)));
    }
  }
  fail(Err::ContextMismatch, "bad field kind");
}

FieldElem& FieldElem::operator/=(const FieldElem& o) {
  require_same_ctx(ctx_, o.ctx_);
  return *this *= o.inverse();
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (ctx_ != o.ctx_) return false;
  switch (ctx_.kind()) {
    case FieldKind::Rational: return mpq_equal(rat().get_mpq_t(), o.rat().get_mpq_t()) != 0;
    case FieldKind::Prime: return res() == o.res();
    case FieldKind::Extension: return ext_rep() == o.ext_rep();
  }
  return false;
}

std::string FieldElem::str() const {
  switch (ctx_.kind()) {
    case FieldKind::Rational: return rat().get_str();
    case FieldKind::Prime: return std::to_string(res());
    case FieldKind::Extension:
      return is_zero() ? "0" : ext_rep().str(ctx_.ext_var());
  }
  return "?";
}

// ---------------------------------------------------------------------------
// UPoly

UPoly::UPoly(FieldCtx ctx, std::vector<FieldElem> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
  for (const FieldElem& c : c_)
    if (c.ctx() != ctx_)
      fail(Err::ContextMismatch, "polynomial coefficient from a different field");
  trim();
}

UPoly UPoly::of_ints(const FieldCtx& ctx, const std::vector<std::int64_t>& coeffs) {
  std::vector<FieldElem> c;
  c.reserve(coeffs.size());
  for (std::int64_t n : coeffs) c.push_back(FieldElem::from_int(ctx, n));
  return UPoly(ctx, std::move(c));
}

UPoly UPoly::constant(const FieldElem& c) { return UPoly(c.ctx(), {c}); }

UPoly UPoly::identity(const FieldCtx& ctx) {
  return UPoly(ctx, {FieldElem::zero(ctx), FieldElem::one(ctx)});
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool UPoly::is_monic() const { return !c_.empty() && c_.back().is_one(); }

FieldElem UPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return FieldElem::zero(ctx_);
  return c_[static_cast<std::size_t>(i)];
}

const FieldElem& UPoly::leading() const {
  if (c_.empty()) fail(Err::ZeroPolynomial, "leading coefficient of zero polynomial");
  return c_.back();
}

UPoly UPoly::operator-() const {
  UPoly r(ctx_);
  r.c_.reserve(c_.size());
  for (const FieldElem& c : c_) r.c_.push_back(-c);
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  require_same_ctx(a.ctx_, b.ctx_);
  UPoly r(a.ctx_);
  const std::size_t n = std::max(a.c_.size(), b.c_.size());
  r.c_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    FieldElem c = i < a.c_.size() ? a.c_[i] : FieldElem::zero(a.ctx_);
    if (i < b.c_.size()) c += b.c_[i];
    r.c_.push_back(std::move(c));
  }
  r.trim();
  return r;
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  require_same_ctx(a.ctx_, b.ctx_);
  if (a.is_zero() || b.is_zero()) return UPoly(a.ctx_);
  UPoly r(a.ctx_);
  r.c_.assign(a.c_.size() + b.c_.size() - 1, FieldElem::zero(a.ctx_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  r.trim();
  return r;
}

UPoly UPoly::scaled(const FieldElem& c) const {
  if (c.ctx() != ctx_) fail(Err::ContextMismatch, "scaling coefficient from a different field");
  UPoly r(ctx_);
  if (c.is_zero()) return r;
  r.c_.reserve(c_.size());
  for (const FieldElem& x : c_) r.c_.push_back(x * c);
  return r;
}

UPoly UPoly::shifted(int k) const {
  if (k < 0) fail(Err::ValidationError, "negative shift");
  if (is_zero()) return UPoly(ctx_);
  UPoly r(ctx_);
  r.c_.assign(static_cast<std::size_t>(k), FieldElem::zero(ctx_));
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

UPoly UPoly::monic() const {
  if (is_zero()) fail(Err::ZeroPolynomial, "cannot normalize the zero polynomial");
  if (is_monic()) return *this;
  return scaled(leading().inverse());
}

bool UPoly::operator==(const UPoly& o) const {
  if (ctx_ != o.ctx_ || c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

FieldElem UPoly::eval(const FieldElem& x) const {
  if (x.ctx() != ctx_) fail(Err::ContextMismatch, "evaluation point from a different field");
  FieldElem acc = FieldElem::zero(ctx_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

UPoly UPoly::derivative() const {
  UPoly r(ctx_);
  for (std::size_t i = 1; i < c_.size(); ++i)
    r.c_.push_back(c_[i] * FieldElem::from_int(ctx_, static_cast<std::int64_t>(i)));
  r.trim();
  return r;
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const FieldElem c = coeff(k);
    if (c.is_zero()) continue;
    std::string cs = c.str();
    bool neg = false;
    if (ctx_.is_rational() && cs.front() == '-') {
      neg = true;
      cs.erase(cs.begin());
    }
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    const bool unit_coeff = cs == "1" && k > 0;
    if (!unit_coeff) {
      if (cs.find(' ') != std::string::npos) out << "(" << cs << ")";
      else out << cs;
    }
    if (k > 0) {
      if (!unit_coeff) out << "*";
      out << var;
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Division, gcd

std::pair<UPoly, UPoly> divmod(const UPoly& f, const UPoly& g) {
  require_same_ctx(f.ctx(), g.ctx());
  if (g.is_zero()) fail(Err::DivisionByZero, "polynomial division by zero");
  UPoly q(f.ctx()), r = f;
  const FieldElem lg_inv = g.leading().inverse();
  while (!r.is_zero() && r.degree() >= g.degree()) {
    const int k = r.degree() - g.degree();
    const FieldElem c = r.leading() * lg_inv;
    q = q + UPoly::constant(c).shifted(k);
    r = r - g.scaled(c).shifted(k);
  }
  return {std::move(q), std::move(r)};
}

UPoly poly_gcd(const UPoly& f, const UPoly& g) {
  require_same_ctx(f.ctx(), g.ctx());
  UPoly a = f, b = g;
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    // Normalizing each remainder keeps rational coefficients from exploding.
    b = r.is_zero() ? std::move(r) : r.monic();
  }
  return a.is_zero() ? a : a.monic();
}

XgcdResult poly_xgcd(const UPoly& f, const UPoly& h) {
  require_same_ctx(f.ctx(), h.ctx());
  const FieldCtx& ctx = f.ctx();
  UPoly r0 = f, r1 = h;
  UPoly s0 = UPoly::constant(FieldElem::one(ctx)), s1(ctx);
  UPoly t0(ctx), t1 = UPoly::constant(FieldElem::one(ctx));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UPoly s2 = s0 - q * s1;
    UPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {UPoly(ctx), UPoly(ctx), UPoly(ctx)};
  const FieldElem lc_inv = r0.leading().inverse();
  return {r0.scaled(lc_inv), s0.scaled(lc_inv), t0.scaled(lc_inv)};
}

bool is_separable(const UPoly& f) {
  if (f.degree() < 1)
    fail(Err::ZeroPolynomial, "separability is defined for polynomials of degree >= 1");
  return poly_gcd(f, f.derivative()).degree() == 0;
}

// ---------------------------------------------------------------------------
// Irreducibility

namespace {

// All positive divisors of |n|, n != 0, found by scanning up to sqrt(|n|).
// Refuses when |n| exceeds the desk-scale scan budget.
std::vector<mpz_class> positive_divisors(const mpz_class& n) {
  mpz_class a = abs(n);
  if (a > mpz_class("1000000000000"))
    fail(Err::UnsupportedDegree,
         "constant term too large for the exact integer factor search");
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      small.push_back(d);
      if (d * d != a) large.push_back(a / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

mpz_class eval_int_poly(const std::vector<mpz_class>& c, const mpz_class& x) {
  mpz_class acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool irreducible_over_q(const UPoly& f) {
  const int n = f.degree();
  if (n > 4)
    fail(Err::UnsupportedDegree,
         "exact irreducibility over Q is certified for degree <= 4 only");

  // Substitute t = s/m with m the lcm of coefficient denominators; the result
  // g(s) = m^n f(s/m) is integer and monic, and factors exactly when f does.
  mpz_class m = 1;
  for (int i = 0; i < n; ++i) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), f.coeff(i).rat().get_den().get_mpz_t());
  std::vector<mpz_class> b(static_cast<std::size_t>(n) + 1);
  mpz_class mk = 1;  // m^(n-i), built from the top down
  b[static_cast<std::size_t>(n)] = 1;
  for (int i = n - 1; i >= 0; --i) {
    mk *= m;
    mpq_class scaled = f.coeff(i).rat() * mpq_class(mk);
    if (scaled.get_den() != 1)
      fail(Err::ValidationError, "internal: denominator clearing failed");
    b[static_cast<std::size_t>(i)] = scaled.get_num();
  }

  // Linear factors: an integer root of a monic integer polynomial divides the
  // constant term.
  if (b[0] == 0) return false;  // s divides g
  for (const mpz_class& d : positive_divisors(b[0])) {
    if (eval_int_poly(b, d) == 0 || eval_int_poly(b, -d) == 0) return false;
  }
  if (n <= 3) return true;

  // Quartic without roots: the only remaining split is into two monic integer
  // quadratics (s^2 + a s + p)(s^2 + c s + q).  Matching coefficients:
  //   p q = b0,  a + c = b3,  a c = b2 - p - q,  a q + c p = b1.
  for (const mpz_class& d : positive_divisors(b[0])) {
    for (int sign = 0; sign < 2; ++sign) {
      const mpz_class p = sign ? mpz_class(-d) : d;
      const mpz_class q = b[0] / p;
      mpz_class disc = b[3] * b[3] - 4 * (b[2] - p - q);
      if (disc < 0 || mpz_perfect_square_p(disc.get_mpz_t()) == 0) continue;
      mpz_class s;
      mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
      for (int pick = 0; pick < 2; ++pick) {
        const mpz_class twice_a = pick ? mpz_class(b[3] - s) : mpz_class(b[3] + s);
        if (mpz_odd_p(twice_a.get_mpz_t())) continue;
        const mpz_class a = twice_a / 2;
        const mpz_class c = b[3] - a;
        if (a * q + c * p == b[1]) return false;
      }
    }
  }
  return true;
}

bool irreducible_over_fp(const UPoly& f) {
  const std::int64_t p = f.ctx().prime_modulus();
  const int n = f.degree();
  // Trial division by every monic polynomial of degree up to n/2 gives an
  // unconditional certificate.  The enumeration has sum_{d<=n/2} p^d
  // candidates; refuse past the desk-scale budget.
  double budget = 0;
  for (int d = 1; d <= n / 2; ++d) {
    double count = 1;
    for (int i = 0; i < d; ++i) count *= static_cast<double>(p);
    budget += count;
    if (budget > 4e6)
      fail(Err::UnsupportedDegree,
           "trial-division certificate too large for p=" + std::to_string(p) +
               ", degree " + std::to_string(n));
  }
  const FieldCtx& ctx = f.ctx();
  for (int d = 1; d <= n / 2; ++d) {
    std::vector<std::int64_t> digits(static_cast<std::size_t>(d), 0);
    for (;;) {
      std::vector<FieldElem> coeffs;
      coeffs.reserve(static_cast<std::size_t>(d) + 1);
      for (std::int64_t v : digits) coeffs.push_back(FieldElem::from_int(ctx, v));
      coeffs.push_back(FieldElem::one(ctx));
      if (divmod(f, UPoly(ctx, std::move(coeffs))).second.is_zero()) return false;
      // odometer step
      int i = 0;
      while (i < d && ++digits[static_cast<std::size_t>(i)] == p) {
        digits[static_cast<std::size_t>(i)] = 0;
        ++i;
      }
      if (i == d) break;
    }
  }
  return true;
}

}  // namespace

bool is_irreducible(const UPoly& f) {
  if (f.degree() < 1)
    fail(Err::ZeroPolynomial, "irreducibility is defined for polynomials of degree >= 1");
  if (!f.is_monic()) fail(Err::NotMonic, "irreducibility test expects a monic polynomial");
  if (f.degree() == 1) return true;
  switch (f.ctx().kind()) {
    case FieldKind::Rational: return irreducible_over_q(f);
    case FieldKind::Prime: return irreducible_over_fp(f);
    case FieldKind::Extension:
      fail(Err::UnsupportedDegree, "irreducibility over extension fields is not certified");
  }
  return false;
}

UPoly embed_poly(const FieldCtx& ext_ctx, const UPoly& f) {
  if (!ext_ctx.is_extension() || ext_ctx.base() != f.ctx())
    fail(Err::ContextMismatch, "embed_poly expects an extension of the coefficient field");
  std::vector<FieldElem> coeffs;
  coeffs.reserve(static_cast<std::size_t>(f.degree()) + 1);
  for (int i = 0; i <= f.degree(); ++i) {
    const FieldElem c = f.coeff(i);
    UPoly rep = c.is_zero() ? UPoly(f.ctx()) : UPoly::constant(c);
    coeffs.push_back(FieldElem::from_rep(ext_ctx, rep));
  }
  return UPoly(ext_ctx, std::move(coeffs));
}

}  // namespace divalg
