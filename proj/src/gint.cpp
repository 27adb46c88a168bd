#include "fordsph/gint.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace fordsph {

namespace {

using i128 = __int128;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw ArithmeticError("Gaussian integer addition overflows 64 bits");
  return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) throw ArithmeticError("Gaussian integer subtraction overflows 64 bits");
  return out;
}

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw ArithmeticError("Gaussian integer product overflows 64 bits");
  return static_cast<std::int64_t>(v);
}

// Nearest integer to x / n for n > 0, ties to even.
i128 round_div(i128 x, i128 n) {
  i128 q = x / n;
  i128 r = x % n;
  if (r < 0) {
    q -= 1;
    r += n;
  }
  const i128 twice = 2 * r;
  if (twice > n || (twice == n && (q & 1) != 0)) q += 1;
  return q;
}

// floor(sqrt(n)) for n >= 0, exact.
std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<i128>(a) * b % m);
}

std::int64_t powmod(std::int64_t base, std::int64_t e, std::int64_t m) {
  std::int64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

}  // namespace

GInt operator+(const GInt& a, const GInt& b) { return GInt{checked_add(a.re, b.re), checked_add(a.im, b.im)}; }

GInt operator-(const GInt& a, const GInt& b) { return GInt{checked_sub(a.re, b.re), checked_sub(a.im, b.im)}; }

GInt operator-(const GInt& a) { return GInt{checked_sub(0, a.re), checked_sub(0, a.im)}; }

GInt operator*(const GInt& a, const GInt& b) {
  const i128 re = static_cast<i128>(a.re) * b.re - static_cast<i128>(a.im) * b.im;
  const i128 im = static_cast<i128>(a.re) * b.im + static_cast<i128>(a.im) * b.re;
  return GInt{narrow(re), narrow(im)};
}

std::int64_t norm(const GInt& q) {
  return narrow(static_cast<i128>(q.re) * q.re + static_cast<i128>(q.im) * q.im);
}

GInt pow(const GInt& base, unsigned exponent) {
  GInt result{1, 0};
  for (unsigned k = 0; k < exponent; ++k) result *= base;
  return result;
}

CanonicalGInt CanonicalGInt::from(const GInt& q) {
  if (!is_canonical(q)) throw DomainError("not in Z[i]^+: " + to_string(q));
  return CanonicalGInt(q);
}

Canonicalized canonicalize(const GInt& q) {
  if (q.is_zero()) throw DomainError("canonicalize: zero has no canonical associate");
  // q = u * c  <=>  c = conj(u) * q.
  for (const GInt& u : kUnits) {
    const GInt c = conj(u) * q;
    if (CanonicalGInt::is_canonical(c)) return Canonicalized{u, CanonicalGInt::from(c)};
  }
  throw DomainError("canonicalize: unreachable");  // every orbit meets Z[i]^+
}

DivRem div_rem(const GInt& a, const GInt& b) {
  if (b.is_zero()) throw DomainError("div_rem: division by zero");
  const i128 n = static_cast<i128>(b.re) * b.re + static_cast<i128>(b.im) * b.im;
  // a * conj(b)
  const i128 x = static_cast<i128>(a.re) * b.re + static_cast<i128>(a.im) * b.im;
  const i128 y = static_cast<i128>(a.im) * b.re - static_cast<i128>(a.re) * b.im;
  const GInt q{narrow(round_div(x, n)), narrow(round_div(y, n))};
  return DivRem{q, a - q * b};
}

bool divides(const GInt& d, const GInt& a) {
  if (d.is_zero()) return a.is_zero();
  return div_rem(a, d).remainder.is_zero();
}

GInt exact_div(const GInt& a, const GInt& b) {
  const DivRem dr = div_rem(a, b);
  if (!dr.remainder.is_zero()) throw DomainError("exact_div: " + to_string(b) + " does not divide " + to_string(a));
  return dr.quotient;
}

CanonicalGInt gcd(const GInt& a, const GInt& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd(0, 0) is undefined");
  GInt x = a;
  GInt y = b;
  while (!y.is_zero()) {
    GInt r = div_rem(x, y).remainder;
    x = y;
    y = r;
  }
  return canonicalize(x).canonical;
}

bool is_coprime(const GInt& a, const GInt& b) { return gcd(a, b) == CanonicalGInt::one(); }

Bezout xgcd(const GInt& a, const GInt& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("xgcd(0, 0) is undefined");
  GInt old_r = a, r = b;
  GInt old_x{1, 0}, x{0, 0};
  GInt old_y{0, 0}, y{1, 0};
  while (!r.is_zero()) {
    const GInt q = div_rem(old_r, r).quotient;
    GInt t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_x - q * x;
    old_x = x;
    x = t;
    t = old_y - q * y;
    old_y = y;
    y = t;
  }
  return Bezout{old_r, old_x, old_y};
}

GInt inverse_mod(const GInt& a, const GInt& m) {
  if (m.is_zero()) throw DomainError("inverse_mod: zero modulus");
  const Bezout bz = xgcd(a, m);
  if (!bz.g.is_unit()) throw DomainError("inverse_mod: " + to_string(a) + " is not invertible modulo " + to_string(m));
  // a*x + m*y = g with g a unit, so a*(x*conj(g)) == 1 mod m.
  return div_rem(bz.x * conj(bz.g), m).remainder;
}

std::vector<std::pair<std::int64_t, unsigned>> factor_integer(std::int64_t n) {
  if (n <= 0) throw DomainError("factor_integer: n must be positive");
  std::vector<std::pair<std::int64_t, unsigned>> out;
  for (std::int64_t p = 2; static_cast<i128>(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1u);
  return out;
}

std::pair<std::int64_t, std::int64_t> two_squares(std::int64_t p) {
  if (p == 2) return {1, 1};
  if (p < 2 || p % 4 != 1) throw DomainError("two_squares: " + std::to_string(p) + " is not 2 or 1 mod 4");
  if (p < 1'000'000) {
    for (std::int64_t a = 1; a * a < p; ++a) {
      const std::int64_t b = isqrt(p - a * a);
      if (a * a + b * b == p) return {std::max(a, b), std::min(a, b)};
    }
    throw DomainError("two_squares: no representation for " + std::to_string(p));
  }
  // Cornacchia: x^2 == -1 mod p from a quadratic non-residue, then Euclid.
  std::int64_t c = 2;
  while (powmod(c, (p - 1) / 2, p) != p - 1) ++c;
  std::int64_t x = powmod(c, (p - 1) / 4, p);
  std::int64_t a = p;
  std::int64_t b = x;
  const std::int64_t limit = isqrt(p);
  while (b > limit) {
    const std::int64_t r = a % b;
    a = b;
    b = r;
  }
  const std::int64_t rest = p - b * b;
  const std::int64_t other = isqrt(rest);
  if (other * other != rest) throw DomainError("two_squares: Cornacchia failed for " + std::to_string(p));
  return {std::max(b, other), std::min(b, other)};
}

GInt Factorization::product() const {
  GInt out = unit;
  for (const PrimePower& pp : factors) out *= pow(pp.prime.value(), pp.exponent);
  return out;
}

Factorization factor(const GInt& q) {
  if (q.is_zero()) throw DomainError("factor: zero has no factorization");
  Factorization out;
  GInt rest = q;
  auto strip = [&](const GInt& prime) {
    unsigned e = 0;
    for (DivRem dr = div_rem(rest, prime); dr.remainder.is_zero(); dr = div_rem(rest, prime)) {
      rest = dr.quotient;
      ++e;
    }
    if (e > 0) out.factors.push_back(PrimePower{CanonicalGInt::from(prime), e});
  };
  for (const auto& [p, e] : factor_integer(norm(q))) {
    if (p == 2) {
      strip(GInt{1, 1});
    } else if (p % 4 == 3) {
      strip(GInt{p, 0});
    } else {
      const auto [a, b] = two_squares(p);
      strip(canonicalize(GInt{a, b}).canonical);
      strip(canonicalize(GInt{a, -b}).canonical);
    }
  }
  if (!rest.is_unit()) throw DomainError("factor: residual " + to_string(rest) + " is not a unit");
  out.unit = rest;
  std::sort(out.factors.begin(), out.factors.end(), [](const PrimePower& x, const PrimePower& y) {
    const auto nx = x.prime.norm(), ny = y.prime.norm();
    if (nx != ny) return nx < ny;
    return x.prime < y.prime;
  });
  return out;
}

std::string to_string(const GInt& q) {
  std::string out = std::to_string(q.re);
  if (q.im == 0) return out;
  out += q.im < 0 ? '-' : '+';
  const auto mag = q.im < 0 ? -static_cast<std::uint64_t>(q.im) : static_cast<std::uint64_t>(q.im);
  out += std::to_string(mag);
  out += 'i';
  return out;
}

namespace {

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
  std::int64_t v = 0;
  if (digits.empty()) throw InputError("invalid Gaussian integer literal: '" + std::string(whole) + "'");
  const auto* first = digits.data();
  const auto* last = digits.data() + digits.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last)
    throw InputError("invalid Gaussian integer literal: '" + std::string(whole) + "'");
  return v;
}

// Coefficient of an imaginary term without its trailing 'i': "", "+", "-",
// "+3", "-3", "3".
std::int64_t parse_imag(std::string_view coeff, std::string_view whole) {
  if (coeff.empty() || coeff == "+") return 1;
  if (coeff == "-") return -1;
  return parse_int(coeff, whole);
}

}  // namespace

GInt parse_gint(std::string_view text) {
  if (text.empty()) throw InputError("invalid Gaussian integer literal: empty");
  if (text.back() != 'i') return GInt{parse_int(text, text), 0};
  const std::string_view body = text.substr(0, text.size() - 1);
  const auto split = body.find_last_of("+-");
  if (split == std::string_view::npos || split == 0) return GInt{0, parse_imag(body, text)};
  const std::string_view real = body.substr(0, split);
  const std::string_view imag = body.substr(split);
  if (imag.size() > 1 && (imag[1] == '+' || imag[1] == '-'))
    throw InputError("invalid Gaussian integer literal: '" + std::string(text) + "'");
  return GInt{parse_int(real, text), parse_imag(imag, text)};
}

}  // namespace fordsph
