#pragma once

// Multiplicative arithmetic over Z[i]^+: the Moebius function mu_i, the Euler
// function phi_i = |(Z[i]/qZ[i])^*|, divisor enumeration, r_2, truncated
// Gaussian zeta values and the partial sums used by the moment asymptotics.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "fordsph/gint.hpp"

namespace fordsph {

int mu_i(const CanonicalGInt& q);
std::int64_t phi_i(const CanonicalGInt& q);

// All canonical divisors of q, sorted by (norm, re, im).
std::vector<CanonicalGInt> divisors(const CanonicalGInt& q);

// Sum of mu_i(d) over canonical d | q.
std::int64_t mobius_divisor_sum(const CanonicalGInt& q);

using ArithFunctionTable = std::map<CanonicalGInt, double>;

// g(q) = sum_{d | q} mu_i(q/d) f(d). InputError if f lacks a divisor of q.
double mobius_transform(const ArithFunctionTable& f, const CanonicalGInt& q);

// Builds g on every divisor of q by mobius_transform and checks that
// f(q) == sum_{d | q} g(d) up to rounding.
bool mobius_inversion_check(const ArithFunctionTable& f, const CanonicalGInt& q);

// Value of a multiplicative function on p^k; f(1) = 1 is implied.
using PrimePowerFunction = std::function<double(const CanonicalGInt& prime, unsigned exponent)>;

double multiplicative_value(const PrimePowerFunction& f, const CanonicalGInt& d);

// sum_{d | q} f(d) as prod_i (1 + f(p_i) + ... + f(p_i^a_i)).
double divisor_sum_multiplicative(const PrimePowerFunction& f, const CanonicalGInt& q);

// #{(a, b) in Z^2 : a^2 + b^2 = n}, from the factorization of n.
std::int64_t r2(std::int64_t n);

struct WeightedR2Sum {
  double sum = 0.0;        // sum_{1 <= n <= N} n^a r_2(n)
  double main_term = 0.0;  // pi N^{a+1} / (a+1)
};

WeightedR2Sum sum_r2_weighted(std::int64_t N, double a);

// mu_i and phi_i for every q in Z[i]^+ with norm(q) <= max_norm, built from a
// smallest-prime-factor sieve over rational norms. Entries are stored in
// row-major order: re ascending, then im ascending.
class ArithTable {
 public:
  struct Entry {
    GInt q;
    std::int64_t norm;
    int mu;
    std::int64_t phi;
  };

  explicit ArithTable(std::int64_t max_norm);
  static ArithTable for_radius(std::int64_t radius) { return ArithTable(radius * radius); }

  std::int64_t max_norm() const { return max_norm_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }

  // Lookup by value; DomainError if q is not canonical or beyond max_norm.
  const Entry& at(const GInt& q) const;

 private:
  std::int64_t max_norm_;
  std::vector<std::size_t> row_offset_;  // index of (re, 0) for re >= 1
  std::vector<Entry> entries_;
};

struct ZetaTruncation {
  double s = 0.0;
  double radius = 0.0;
  double value = 0.0;          // sum_{|q| <= radius} |q|^{-2s}
  double inverse_value = 0.0;  // sum_{|q| <= radius} mu_i(q) |q|^{-2s}
};

ZetaTruncation zeta_i_truncated(double s, double radius);

// Upper bound for sum_{|q| > radius} |q|^{-4} over Z[i]^+, from the count
// #{q : |q| <= t} <= (pi/4)(t + sqrt 2)^2. Also bounds the mu_i-weighted tail.
double zeta_tail_bound_s2(double radius);

// sum over q in Z[i]^+ with lower <= |q| <= upper of |q|^{-2s}.
double zeta_tail(double s, double lower, double upper);

inline constexpr std::int64_t kDefaultZetaRadius = 2000;

// zeta_i_truncated(2, kDefaultZetaRadius), computed once per process.
const ZetaTruncation& zeta_i_2_reference();

struct PhiSum {
  std::int64_t exact = 0;   // sum_{|q| <= Q} phi_i(q)
  double main_term = 0.0;   // (pi/8) zeta_i^{-1}(2) Q^4
};

PhiSum sum_phi_upto(std::int64_t Q);

}  // namespace fordsph
