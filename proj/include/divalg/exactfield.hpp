#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "divalg/error.hpp"

namespace divalg {

class UPoly;
struct ExtCtxInfo;

enum class FieldKind { Rational, Prime, Extension };

// A field context tags every scalar with the field it lives in.  Three kinds
// are supported: the rationals, a prime field F_p (p < 2^31 so residue
// products fit in int64), and a simple extension F(u) = base[t]/(m(t)) with m
// irreducible over the base.  Contexts compare structurally, so two
// independently built F_7 contexts are interchangeable; all binary operations
// demand equal contexts and refuse to coerce.
class FieldCtx {
public:
  FieldCtx();  // rationals
  static FieldCtx rational();
  static FieldCtx prime(std::int64_t p);
  // Defined out of line (needs the complete UPoly).  `var` is the display name
  // of the adjoined generator.
  static FieldCtx extension(const UPoly& modulus, const std::string& var = "u");

  FieldKind kind() const { return kind_; }
  bool is_rational() const { return kind_ == FieldKind::Rational; }
  bool is_prime() const { return kind_ == FieldKind::Prime; }
  bool is_extension() const { return kind_ == FieldKind::Extension; }

  std::int64_t prime_modulus() const;          // Prime only
  const FieldCtx& base() const;                // Extension only
  const UPoly& ext_modulus() const;            // Extension only
  const std::string& ext_var() const;          // Extension only
  int ext_degree() const;                      // Extension only
  std::int64_t characteristic() const;         // 0 for Q and its extensions

  bool operator==(const FieldCtx& o) const;
  bool operator!=(const FieldCtx& o) const { return !(*this == o); }

  std::string describe() const;

private:
  FieldKind kind_ = FieldKind::Rational;
  std::int64_t p_ = 0;
  std::shared_ptr<const ExtCtxInfo> ext_;
};

// An exact scalar.  The payload matches the context kind: canonical mpq for
// the rationals, a residue in [0, p) for prime fields, and a shared reduced
// polynomial representative (degree < [F(u):F]) for extensions.
class FieldElem {
public:
  FieldElem() : ctx_(), v_(mpq_class(0)) {}  // rational zero

  static FieldElem zero(const FieldCtx& ctx);
  static FieldElem one(const FieldCtx& ctx);
  static FieldElem from_int(const FieldCtx& ctx, std::int64_t n);
  static FieldElem from_mpq(const FieldCtx& ctx, const mpq_class& q);
  // Parses a literal: "a/b" or "a" over Q, a signed decimal residue over F_p.
  // Extension contexts accept base-field literals (embedded constants).
  static FieldElem parse(const FieldCtx& ctx, std::string_view text);
  // Wraps a reduced representative into an extension-field element.
  static FieldElem from_rep(const FieldCtx& ext_ctx, const UPoly& rep);

  const FieldCtx& ctx() const { return ctx_; }
  bool is_zero() const;
  bool is_one() const;

  FieldElem operator-() const;
  FieldElem inverse() const;  // Err::DivisionByZero on zero

  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  std::string str() const;

  // Hot-path accessors; the caller is responsible for matching the kind.
  std::int64_t res() const { return std::get<std::int64_t>(v_); }
  const mpq_class& rat() const { return std::get<mpq_class>(v_); }
  mpq_class& rat_mut() { return std::get<mpq_class>(v_); }
  const UPoly& ext_rep() const;

private:
  FieldElem(FieldCtx ctx, std::int64_t r) : ctx_(std::move(ctx)), v_(r) {}
  FieldElem(FieldCtx ctx, mpq_class q) : ctx_(std::move(ctx)), v_(std::move(q)) {}
  FieldElem(FieldCtx ctx, std::shared_ptr<const UPoly> rep)
      : ctx_(std::move(ctx)), v_(std::move(rep)) {}

  FieldCtx ctx_;
  std::variant<std::int64_t, mpq_class, std::shared_ptr<const UPoly>> v_;
};

// Univariate polynomial with coefficients in a fixed field context, stored
// lowest-degree first and kept trimmed (no trailing zero coefficients).  The
// zero polynomial has degree -1 by convention.
class UPoly {
public:
  explicit UPoly(FieldCtx ctx) : ctx_(std::move(ctx)) {}
  UPoly(FieldCtx ctx, std::vector<FieldElem> coeffs);
  static UPoly of_ints(const FieldCtx& ctx, const std::vector<std::int64_t>& coeffs);
  static UPoly constant(const FieldElem& c);
  static UPoly identity(const FieldCtx& ctx);  // the monomial t

  const FieldCtx& ctx() const { return ctx_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const;
  FieldElem coeff(int i) const;  // zero beyond the stored range
  const FieldElem& leading() const;
  const std::vector<FieldElem>& coeffs() const { return c_; }

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly scaled(const FieldElem& c) const;
  UPoly shifted(int k) const;  // multiply by t^k
  UPoly monic() const;         // Err::ZeroPolynomial on zero

  bool operator==(const UPoly& o) const;
  bool operator!=(const UPoly& o) const { return !(*this == o); }

  FieldElem eval(const FieldElem& x) const;
  UPoly derivative() const;

  // Formats with descending powers, e.g. "t^2 - 2*t + 4".
  std::string str(const std::string& var = "t") const;

private:
  void trim();

  FieldCtx ctx_;
  std::vector<FieldElem> c_;
};

// Euclidean division f = q*g + r with deg r < deg g.  Err::DivisionByZero if
// g is zero.
std::pair<UPoly, UPoly> divmod(const UPoly& f, const UPoly& g);
// Monic gcd; gcd(0, 0) = 0.
UPoly poly_gcd(const UPoly& f, const UPoly& g);
// Extended gcd: returns (g, s, t) monic with s*f + t*h = g.
struct XgcdResult {
  UPoly g, s, t;
};
XgcdResult poly_xgcd(const UPoly& f, const UPoly& h);

// True when gcd(f, f') is constant, i.e. f has no repeated roots in any
// extension.  Requires deg f >= 1.
bool is_separable(const UPoly& f);

// Exact irreducibility certificate for monic f.  Over F_p: trial division by
// every monic polynomial of degree <= deg(f)/2 (the enumeration is capped at
// desk scale; beyond the cap the call refuses with Err::UnsupportedDegree).
// Over Q: degree <= 4 only — integer-root search plus, for quartics, an
// exhaustive integer quadratic-factor search after clearing denominators.
bool is_irreducible(const UPoly& f);

struct ExtCtxInfo {
  FieldCtx base;
  UPoly modulus;
  std::string var;
};

// Re-tags the coefficients of a base-field polynomial as constants of the
// extension field (coefficientwise embedding F[t] -> F(u)[t]).
UPoly embed_poly(const FieldCtx& ext_ctx, const UPoly& f);

}  // namespace divalg
