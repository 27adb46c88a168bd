#include "fordsph/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fordsph/numeric.hpp"

namespace fordsph {

namespace {

std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t out = 1;
  for (unsigned k = 0; k < e; ++k) {
    if (__builtin_mul_overflow(out, b, &out)) throw ArithmeticError("integer power overflows 64 bits");
  }
  return out;
}

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool norm_order(const CanonicalGInt& a, const CanonicalGInt& b) {
  const auto na = a.norm(), nb = b.norm();
  if (na != nb) return na < nb;
  return a < b;
}

}  // namespace

int mu_i(const CanonicalGInt& q) {
  const Factorization f = factor(q);
  for (const PrimePower& pp : f.factors)
    if (pp.exponent > 1) return 0;
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

std::int64_t phi_i(const CanonicalGInt& q) {
  std::int64_t out = 1;
  for (const PrimePower& pp : factor(q).factors) {
    const std::int64_t np = pp.prime.norm();
    out *= ipow(np, pp.exponent) - ipow(np, pp.exponent - 1);
  }
  return out;
}

std::vector<CanonicalGInt> divisors(const CanonicalGInt& q) {
  std::vector<GInt> acc{GInt{1, 0}};
  for (const PrimePower& pp : factor(q).factors) {
    std::vector<GInt> next;
    next.reserve(acc.size() * (pp.exponent + 1));
    for (const GInt& d : acc) {
      GInt power{1, 0};
      for (unsigned k = 0; k <= pp.exponent; ++k) {
        next.push_back(d * power);
        power *= pp.prime.value();
      }
    }
    acc = std::move(next);
  }
  std::vector<CanonicalGInt> out;
  out.reserve(acc.size());
  for (const GInt& d : acc) out.push_back(canonicalize(d).canonical);
  std::sort(out.begin(), out.end(), norm_order);
  return out;
}

std::int64_t mobius_divisor_sum(const CanonicalGInt& q) {
  std::int64_t total = 0;
  for (const CanonicalGInt& d : divisors(q)) total += mu_i(d);
  return total;
}

namespace {

double lookup(const ArithFunctionTable& f, const CanonicalGInt& d) {
  const auto it = f.find(d);
  if (it == f.end()) throw InputError("function table has no entry for divisor " + to_string(d));
  return it->second;
}

CanonicalGInt cofactor(const CanonicalGInt& q, const CanonicalGInt& d) {
  return canonicalize(exact_div(q, d)).canonical;
}

}  // namespace

double mobius_transform(const ArithFunctionTable& f, const CanonicalGInt& q) {
  CompensatedSum g;
  for (const CanonicalGInt& d : divisors(q)) g += mu_i(cofactor(q, d)) * lookup(f, d);
  return g.value();
}

bool mobius_inversion_check(const ArithFunctionTable& f, const CanonicalGInt& q) {
  const double fq = lookup(f, q);
  CompensatedSum total;
  double scale = std::fabs(fq);
  for (const CanonicalGInt& d : divisors(q)) {
    const double g = mobius_transform(f, d);
    total += g;
    scale = std::max(scale, std::fabs(g));
  }
  return std::fabs(total.value() - fq) <= 1e-9 * std::max(1.0, scale);
}

double multiplicative_value(const PrimePowerFunction& f, const CanonicalGInt& d) {
  double out = 1.0;
  for (const PrimePower& pp : factor(d).factors) out *= f(pp.prime, pp.exponent);
  return out;
}

double divisor_sum_multiplicative(const PrimePowerFunction& f, const CanonicalGInt& q) {
  double out = 1.0;
  for (const PrimePower& pp : factor(q).factors) {
    double local = 1.0;
    for (unsigned k = 1; k <= pp.exponent; ++k) local += f(pp.prime, k);
    out *= local;
  }
  return out;
}

std::int64_t r2(std::int64_t n) {
  if (n < 0) throw DomainError("r2: n must be nonnegative");
  if (n == 0) return 1;
  std::int64_t out = 4;
  for (const auto& [p, e] : factor_integer(n)) {
    if (p % 4 == 3 && e % 2 == 1) return 0;
    if (p % 4 == 1) out *= static_cast<std::int64_t>(e) + 1;
  }
  return out;
}

WeightedR2Sum sum_r2_weighted(std::int64_t N, double a) {
  if (N < 0) throw DomainError("sum_r2_weighted: N must be nonnegative");
  if (a < 0) throw DomainError("sum_r2_weighted: exponent must be nonnegative");
  WeightedR2Sum out;
  out.main_term = kPi * std::pow(static_cast<double>(N), a + 1.0) / (a + 1.0);
  const std::int64_t r = isqrt(N);
  if (a == 0.0) {
    std::int64_t count = 0;
    for (std::int64_t x = -r; x <= r; ++x) count += 2 * isqrt(N - x * x) + 1;
    out.sum = static_cast<double>(count - 1);  // drop the origin
    return out;
  }
  CompensatedSum sum;
  for (std::int64_t x = -r; x <= r; ++x) {
    const std::int64_t h = isqrt(N - x * x);
    for (std::int64_t y = -h; y <= h; ++y) {
      const std::int64_t n = x * x + y * y;
      if (n > 0) sum += std::pow(static_cast<double>(n), a);
    }
  }
  out.sum = sum.value();
  return out;
}

ArithTable::ArithTable(std::int64_t max_norm) : max_norm_(max_norm) {
  if (max_norm < 1) throw DomainError("ArithTable: max_norm must be at least 1");
  if (max_norm > (std::int64_t{1} << 31)) throw ArithmeticError("ArithTable: max_norm too large for the sieve");

  std::vector<std::uint32_t> spf(static_cast<std::size_t>(max_norm) + 1, 0);
  for (std::int64_t p = 2; p <= max_norm; ++p) {
    if (spf[p] != 0) continue;
    for (std::int64_t m = p; m <= max_norm; m += p)
      if (spf[m] == 0) spf[m] = static_cast<std::uint32_t>(p);
  }

  const std::int64_t max_re = isqrt(max_norm);
  row_offset_.assign(static_cast<std::size_t>(max_re) + 2, 0);
  for (std::int64_t re = 1; re <= max_re; ++re) {
    row_offset_[re] = entries_.size();
    const std::int64_t max_im = isqrt(max_norm - re * re);
    for (std::int64_t im = 0; im <= max_im; ++im) {
      const std::int64_t n = re * re + im * im;
      std::int64_t g = std::gcd(re, im);
      int mu = 1;
      std::int64_t phi = 1;
      // A prime power pi^alpha of norm p^alpha contributes to mu and phi.
      auto take = [&](std::int64_t np, unsigned alpha) {
        if (alpha == 0) return;
        mu = alpha > 1 ? 0 : -mu;
        phi *= ipow(np, alpha) - ipow(np, alpha - 1);
      };
      std::int64_t rest = n;
      while (rest > 1) {
        const std::int64_t p = spf[rest];
        unsigned e = 0;
        while (rest % p == 0) {
          rest /= p;
          ++e;
        }
        if (p == 2) {
          take(2, e);  // (1+i)^e
        } else if (p % 4 == 3) {
          take(p * p, e / 2);  // inert: p^(e/2)
        } else {
          // p = pi * conj(pi). p^k divides q exactly, the rest of the norm
          // belongs to exactly one of pi, conj(pi).
          unsigned k = 0;
          while (g % p == 0) {
            g /= p;
            ++k;
          }
          const unsigned m = e - 2 * k;
          if (k > 0) {
            take(p, k + m);
            take(p, k);
          } else {
            take(p, m);
          }
        }
      }
      entries_.push_back(Entry{GInt{re, im}, n, mu, phi});
    }
  }
  row_offset_[max_re + 1] = entries_.size();
}

const ArithTable::Entry& ArithTable::at(const GInt& q) const {
  if (!CanonicalGInt::is_canonical(q)) throw DomainError("ArithTable::at: not canonical: " + to_string(q));
  if (norm(q) > max_norm_) throw DomainError("ArithTable::at: " + to_string(q) + " lies beyond the table");
  return entries_[row_offset_[q.re] + static_cast<std::size_t>(q.im)];
}

ZetaTruncation zeta_i_truncated(double s, double radius) {
  if (!(s > 1.0)) throw DomainError("zeta_i_truncated: s must exceed 1");
  if (!(radius >= 1.0)) throw DomainError("zeta_i_truncated: radius must be at least 1");
  const auto max_norm = static_cast<std::int64_t>(std::floor(radius * radius));
  const ArithTable table(max_norm);
  CompensatedSum value, inverse;
  for (const ArithTable::Entry& e : table.entries()) {
    const double w = std::pow(static_cast<double>(e.norm), -s);
    value += w;
    if (e.mu != 0) inverse += e.mu * w;
  }
  return ZetaTruncation{s, radius, value.value(), inverse.value()};
}

double zeta_tail_bound_s2(double radius) {
  const double growth = 1.0 + std::sqrt(2.0) / radius;
  return kPi / 2.0 * growth * growth / (radius * radius);
}

double zeta_tail(double s, double lower, double upper) {
  const auto hi = static_cast<std::int64_t>(std::floor(upper * upper));
  const double lo = lower * lower;
  CompensatedSum sum;
  for (std::int64_t re = 1; re * re <= hi; ++re) {
    for (std::int64_t im = 0; re * re + im * im <= hi; ++im) {
      const auto n = static_cast<double>(re * re + im * im);
      if (n >= lo) sum += std::pow(n, -s);
    }
  }
  return sum.value();
}

const ZetaTruncation& zeta_i_2_reference() {
  static const ZetaTruncation z = zeta_i_truncated(2.0, static_cast<double>(kDefaultZetaRadius));
  return z;
}

PhiSum sum_phi_upto(std::int64_t Q) {
  if (Q < 1) throw DomainError("sum_phi_upto: Q must be positive");
  const ArithTable table = ArithTable::for_radius(Q);
  PhiSum out;
  for (const ArithTable::Entry& e : table.entries()) out.exact += e.phi;
  const double q2 = static_cast<double>(Q) * static_cast<double>(Q);
  out.main_term = kPi / 8.0 * zeta_i_2_reference().inverse_value * q2 * q2;
  return out;
}

}  // namespace fordsph
