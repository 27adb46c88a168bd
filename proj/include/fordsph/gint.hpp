#pragma once

// Exact Gaussian integers.
//
// Every operation works on 64-bit components and checks for overflow; an
// intermediate that does not fit throws ArithmeticError instead of wrapping.
// Products that feed norms and divisions are formed in 128 bits.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fordsph/errors.hpp"

namespace fordsph {

struct GInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr GInt() = default;
  constexpr GInt(std::int64_t real, std::int64_t imag = 0) : re(real), im(imag) {}

  constexpr bool is_zero() const { return re == 0 && im == 0; }
  constexpr bool is_unit() const {
    return (im == 0 && (re == 1 || re == -1)) || (re == 0 && (im == 1 || im == -1));
  }

  friend constexpr bool operator==(const GInt&, const GInt&) = default;
  friend constexpr auto operator<=>(const GInt&, const GInt&) = default;
};

inline constexpr GInt kI{0, 1};
inline constexpr GInt kUnits[4] = {GInt{1, 0}, GInt{0, 1}, GInt{-1, 0}, GInt{0, -1}};

GInt operator+(const GInt& a, const GInt& b);
GInt operator-(const GInt& a, const GInt& b);
GInt operator-(const GInt& a);
GInt operator*(const GInt& a, const GInt& b);
inline GInt& operator+=(GInt& a, const GInt& b) { return a = a + b; }
inline GInt& operator-=(GInt& a, const GInt& b) { return a = a - b; }
inline GInt& operator*=(GInt& a, const GInt& b) { return a = a * b; }

inline constexpr GInt conj(const GInt& a) { return GInt{a.re, -a.im}; }

// re^2 + im^2, exact.
std::int64_t norm(const GInt& q);

// A member of Z[i]^+: re >= 1 and im >= 0. One representative per unit orbit
// of nonzero Gaussian integers.
class CanonicalGInt {
 public:
  // Throws DomainError unless q already satisfies re >= 1, im >= 0.
  static CanonicalGInt from(const GInt& q);
  static constexpr CanonicalGInt one() { return CanonicalGInt(GInt{1, 0}); }
  static constexpr bool is_canonical(const GInt& q) { return q.re >= 1 && q.im >= 0; }

  constexpr const GInt& value() const { return value_; }
  constexpr operator const GInt&() const { return value_; }
  std::int64_t norm() const { return fordsph::norm(value_); }

  friend constexpr bool operator==(const CanonicalGInt&, const CanonicalGInt&) = default;
  friend constexpr auto operator<=>(const CanonicalGInt&, const CanonicalGInt&) = default;

 private:
  constexpr explicit CanonicalGInt(const GInt& q) : value_(q) {}
  GInt value_;
};

struct Canonicalized {
  GInt unit;
  CanonicalGInt canonical;
};

// q = unit * canonical with unit in {1, i, -1, -i}. Throws DomainError on 0.
Canonicalized canonicalize(const GInt& q);

struct DivRem {
  GInt quotient;
  GInt remainder;
};

// Euclidean division with componentwise nearest-integer rounding of a/b,
// ties rounded to even. Guarantees norm(remainder) <= norm(b) / 2.
DivRem div_rem(const GInt& a, const GInt& b);

bool divides(const GInt& d, const GInt& a);

// a / b when b divides a exactly; DomainError otherwise.
GInt exact_div(const GInt& a, const GInt& b);

// Canonical associate of a greatest common divisor. gcd(a, 0) is the
// canonical form of a; gcd(0, 0) throws DomainError.
CanonicalGInt gcd(const GInt& a, const GInt& b);
bool is_coprime(const GInt& a, const GInt& b);

// Extended Euclid: a*x + b*y = g where g is a gcd (not canonicalized).
struct Bezout {
  GInt g;
  GInt x;
  GInt y;
};
Bezout xgcd(const GInt& a, const GInt& b);

// x with a*x == 1 (mod m). DomainError if a and m are not coprime or m == 0.
GInt inverse_mod(const GInt& a, const GInt& m);

struct PrimePower {
  CanonicalGInt prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// q = unit * prod prime^exponent, primes canonical, distinct and sorted by
// (norm, re, im).
struct Factorization {
  GInt unit{1, 0};
  std::vector<PrimePower> factors;

  GInt product() const;
};

Factorization factor(const GInt& q);

// A representation p = a^2 + b^2 with a > b >= 0 (or a = b = 1 for p = 2) of a
// rational prime p = 2 or p = 1 (mod 4). Brute-force below 10^6, Cornacchia
// above.
std::pair<std::int64_t, std::int64_t> two_squares(std::int64_t p);

// Rational-integer factorization by trial division: (prime, exponent) pairs
// in increasing order.
std::vector<std::pair<std::int64_t, unsigned>> factor_integer(std::int64_t n);

// Text grammar: "3+2i", "3-2i", "-1", "0+1i"; parsing additionally accepts
// "i", "-i", "2i", "1+i", "-7".
std::string to_string(const GInt& q);
GInt parse_gint(std::string_view text);

// Integer power with overflow checking.
GInt pow(const GInt& base, unsigned exponent);

}  // namespace fordsph
