#include <algorithm>

#include "divalg/algebra.hpp"

// Local Hilbert symbols (a, b)_v over Q and the derived division test for
// rational quaternion algebras.  The symbol is computed from the standard
// closed forms: at the real place it is -1 iff both arguments are negative;
// at an odd prime p, writing a = p^alpha u and b = p^beta v with u, v of
// valuation zero,
//   (a, b)_p = (-1)^{alpha beta eps(p)} (u|p)^beta (v|p)^alpha,
// with (.|p) the Legendre symbol and eps(p) = (p-1)/2 mod 2; at p = 2,
//   (a, b)_2 = (-1)^{eps(u) eps(v) + alpha omega(v) + beta omega(u)},
// where eps and omega are the residues (u-1)/2 and (u^2-1)/8 mod 2 of the odd
// parts.

namespace divalg {

namespace {

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = ((a % m) + m) % m, r1 = m, s0 = 1, s1 = 0;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) fail(Err::ValidationError, "internal: residue not invertible");
  return ((s0 % m) + m) % m;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  base = ((base % m) + m) % m;
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>((static_cast<__int128>(r) * base) % m);
    base = static_cast<std::int64_t>((static_cast<__int128>(base) * base) % m);
    e >>= 1;
  }
  return r;
}

// p-adic valuation of a nonzero rational; `unit` receives the valuation-zero
// cofactor.
long valuation(const mpq_class& q, std::int64_t p, mpq_class& unit) {
  mpz_class pz(static_cast<long>(p)), num, den;
  const long vn = static_cast<long>(mpz_remove(num.get_mpz_t(), q.get_num().get_mpz_t(), pz.get_mpz_t()));
  const long vd = static_cast<long>(mpz_remove(den.get_mpz_t(), q.get_den().get_mpz_t(), pz.get_mpz_t()));
  unit = mpq_class(num, den);
  unit.canonicalize();
  return vn - vd;
}

// Residue of a valuation-zero rational modulo m (m = p or 8).
std::int64_t unit_residue(const mpq_class& u, std::int64_t m) {
  const std::int64_t n = static_cast<std::int64_t>(mpz_fdiv_ui(u.get_num().get_mpz_t(), static_cast<unsigned long>(m)));
  const std::int64_t d = static_cast<std::int64_t>(mpz_fdiv_ui(u.get_den().get_mpz_t(), static_cast<unsigned long>(m)));
  return (n * inv_mod(d, m)) % m;
}

int legendre(const mpq_class& u, std::int64_t p) {
  const std::int64_t r = unit_residue(u, p);
  return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Odd prime factors by trial division (desk-scale inputs; refuse otherwise).
void collect_odd_prime_factors(mpz_class z, std::vector<std::int64_t>& out) {
  z = abs(z);
  if (z == 0) return;
  while (mpz_even_p(z.get_mpz_t())) z /= 2;
  for (std::int64_t d = 3; d <= 1000000; d += 2) {
    if (mpz_cmp_ui(z.get_mpz_t(), 1) == 0) return;
    if (mpz_class(d * d) > z) break;
    if (mpz_divisible_ui_p(z.get_mpz_t(), static_cast<unsigned long>(d))) {
      out.push_back(d);
      while (mpz_divisible_ui_p(z.get_mpz_t(), static_cast<unsigned long>(d))) z /= d;
    }
  }
  if (mpz_cmp_ui(z.get_mpz_t(), 1) != 0) {
    // The remaining cofactor is prime (all factors below 10^6 are gone and
    // the square of the next candidate exceeds it) or too large to certify.
    if (!z.fits_slong_p() || mpz_probab_prime_p(z.get_mpz_t(), 50) == 0)
      fail(Err::ValidationError, "quaternion parameter too large to factor exactly");
    out.push_back(z.get_si());
  }
}

}  // namespace

int hilbert_symbol(const mpq_class& a, const mpq_class& b, std::int64_t p) {
  if (sgn(a) == 0 || sgn(b) == 0)
    fail(Err::ZeroParameter, "Hilbert symbol needs nonzero arguments");
  if (p == 0)  // real place
    return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
  if (p < 2) fail(Err::ValidationError, "place must be 0 (real) or a prime");
  mpq_class u, v;
  const long alpha = valuation(a, p, u);
  const long beta = valuation(b, p, v);
  if (p == 2) {
    const std::int64_t u8 = unit_residue(u, 8), v8 = unit_residue(v, 8);
    const int eps_u = (u8 % 4 == 3) ? 1 : 0;
    const int eps_v = (v8 % 4 == 3) ? 1 : 0;
    const int omega_u = (u8 == 3 || u8 == 5) ? 1 : 0;
    const int omega_v = (v8 == 3 || v8 == 5) ? 1 : 0;
    const int e = eps_u * eps_v + static_cast<int>(alpha % 2 != 0) * omega_v +
                  static_cast<int>(beta % 2 != 0) * omega_u;
    return e % 2 == 0 ? 1 : -1;
  }
  const int eps_p = (p % 4 == 3) ? 1 : 0;
  int sym = (alpha % 2 != 0 && beta % 2 != 0 && eps_p) ? -1 : 1;
  if (beta % 2 != 0) sym *= legendre(u, p);
  if (alpha % 2 != 0) sym *= legendre(v, p);
  return sym;
}

std::vector<std::int64_t> hilbert_relevant_places(const mpq_class& a, const mpq_class& b) {
  std::vector<std::int64_t> odd;
  collect_odd_prime_factors(a.get_num(), odd);
  collect_odd_prime_factors(a.get_den(), odd);
  collect_odd_prime_factors(b.get_num(), odd);
  collect_odd_prime_factors(b.get_den(), odd);
  std::sort(odd.begin(), odd.end());
  odd.erase(std::unique(odd.begin(), odd.end()), odd.end());
  std::vector<std::int64_t> places = {0, 2};
  places.insert(places.end(), odd.begin(), odd.end());
  return places;
}

bool is_division_quaternion(const FieldElem& a, const FieldElem& b) {
  if (!a.ctx().is_rational() || !b.ctx().is_rational())
    fail(Err::ContextMismatch, "the division test is implemented over Q only");
  if (a.is_zero() || b.is_zero())
    fail(Err::ZeroParameter, "quaternion parameters must be nonzero");
  for (std::int64_t p : hilbert_relevant_places(a.rat(), b.rat()))
    if (hilbert_symbol(a.rat(), b.rat(), p) == -1) return true;
  return false;
}

}  // namespace divalg
