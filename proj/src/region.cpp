#include "fordsph/region.hpp"

#include <cmath>
#include <random>

#include "fordsph/arith.hpp"
#include "fordsph/numeric.hpp"
#include "fordsph/quadrature.hpp"

namespace fordsph {

namespace {

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

struct Membership {
  std::int64_t sr, si, ns, bound;

  explicit Membership(const OmegaSpec& spec)
      : sr(spec.s.value().re), si(spec.s.value().im), ns(spec.s.norm()), bound(spec.S * spec.S) {}

  bool operator()(std::int64_t x, std::int64_t y) const {
    const std::int64_t nz = x * x + y * y;
    if (nz > bound) return false;
    // z conj(s) = (x sr + y si) + i (y sr - x si)
    const std::int64_t X = x * sr + y * si, Y = y * sr - x * si;
    return nz + ns + 2 * std::max(std::llabs(X), std::llabs(Y)) > bound;
  }
};

}  // namespace

OmegaSpec OmegaSpec::make(const CanonicalGInt& s, std::int64_t S) {
  if (S < 1 || S > kMaxS) throw DomainError("OmegaSpec: S must lie in [1, 2^24], got " + std::to_string(S));
  if (s.norm() > S * S)
    throw DomainError("OmegaSpec: |" + to_string(s.value()) + "| exceeds S = " + std::to_string(S));
  return OmegaSpec{s, S};
}

bool omega_contains(const GInt& z, const OmegaSpec& spec) {
  if (std::llabs(z.re) > spec.S || std::llabs(z.im) > spec.S) return false;
  return Membership(spec)(z.re, z.im);
}

bool omega_contains_point(double x, double y, const OmegaSpec& spec) {
  const double S2 = static_cast<double>(spec.S) * static_cast<double>(spec.S);
  const double nz = x * x + y * y;
  if (nz > S2) return false;
  const double sr = static_cast<double>(spec.s.value().re), si = static_cast<double>(spec.s.value().im);
  const double X = x * sr + y * si, Y = y * sr - x * si;
  return nz + static_cast<double>(spec.s.norm()) + 2.0 * std::max(std::fabs(X), std::fabs(Y)) > S2;
}

double omega_area_from(double norm_s, double S) {
  if (!(S > 0.0) || norm_s < 0.0 || norm_s > S * S)
    throw DomainError("omega_area: need 0 <= |s| <= S, got |s|^2 = " + std::to_string(norm_s) +
                      ", S = " + std::to_string(S));
  const double a = std::sqrt(norm_s);
  const double t = std::asin(std::min(1.0, a / (std::numbers::sqrt2 * S)));
  return 4.0 * S * S * t + 2.0 * std::numbers::sqrt2 * a * S * std::sqrt(std::max(0.0, 1.0 - norm_s / (2.0 * S * S))) -
         2.0 * norm_s;
}

double omega_area(const OmegaSpec& spec) {
  return omega_area_from(static_cast<double>(spec.s.norm()), static_cast<double>(spec.S));
}

double omega_area_polar_quadrature(double norm_s, double S) {
  if (!(S > 0.0) || norm_s < 0.0 || norm_s > S * S) throw DomainError("omega_area_polar_quadrature: need |s| <= S");
  const double a = std::sqrt(norm_s);
  // With s on the positive real axis and 0 <= t <= pi/4 the farthest unit
  // translate is -a, so r(t) solves r^2 + a^2 + 2 a r cos t = S^2.
  auto inner = [&](double t) {
    const double c = std::cos(t);
    const double r = -a * c + std::sqrt(a * a * c * c - norm_s + S * S);
    return 0.5 * (S * S - r * r);
  };
  QuadratureOptions opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-13;
  return 8.0 * integrate(inner, 0.0, kPi / 4.0, opt).value;
}

CoprimeTester::CoprimeTester(const CanonicalGInt& s) {
  for (const PrimePower& pp : factor(s.value()).factors) primes_.push_back(pp.prime.value());
}

bool CoprimeTester::operator()(const GInt& z) const {
  for (const GInt& p : primes_) {
    // p | z  iff  z conj(p) is divisible by norm(p) componentwise.
    const std::int64_t n = p.re * p.re + p.im * p.im;
    const std::int64_t a = z.re * p.re + z.im * p.im;
    const std::int64_t b = z.im * p.re - z.re * p.im;
    if (a % n == 0 && b % n == 0) return false;
  }
  return true;
}

std::int64_t omega_lattice_count(const OmegaSpec& spec, bool coprime_filter) {
  const Membership in(spec);
  const CoprimeTester coprime(spec.s);
  const std::int64_t S = spec.S, bound = S * S;
  std::int64_t count = 0;
  for (std::int64_t x = -S; x <= S; ++x) {
    const std::int64_t h = isqrt(bound - x * x);
    for (std::int64_t y = -h; y <= h; ++y)
      if (in(x, y) && (!coprime_filter || coprime(GInt{x, y}))) ++count;
  }
  return count;
}

std::int64_t omega_quarter_count(const OmegaSpec& spec, bool coprime_filter) {
  const Membership in(spec);
  const CoprimeTester coprime(spec.s);
  const std::int64_t S = spec.S, bound = S * S;
  std::int64_t count = 0;
  for (std::int64_t x = 1; x <= S; ++x) {
    const std::int64_t h = isqrt(bound - x * x);
    for (std::int64_t y = 0; y <= h; ++y)
      if (in(x, y) && (!coprime_filter || coprime(GInt{x, y}))) ++count;
  }
  return count;
}

double coprime_count_prediction(const OmegaSpec& spec) {
  return static_cast<double>(phi_i(spec.s)) / static_cast<double>(spec.s.norm()) * omega_area(spec);
}

bool omega_area_bounds_check(const OmegaSpec& spec) {
  const double area = omega_area(spec);
  const double a = std::sqrt(static_cast<double>(spec.s.norm()));
  const double S = static_cast<double>(spec.S);
  if (spec.S * spec.S <= 4 * spec.s.norm()) return area >= 2.0 * a * a;
  return area >= 2.0 * (std::sqrt(7.0) - 1.0) * S * a;
}

double boundary_length_surrogate(const OmegaSpec& spec) {
  return kBoundarySurrogateFactor * static_cast<double>(spec.S);
}

MonteCarloEstimate omega_area_monte_carlo(const OmegaSpec& spec, std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("omega_area_monte_carlo: samples must be positive");
  std::mt19937_64 rng(seed);
  const double S = static_cast<double>(spec.S);
  std::uniform_real_distribution<double> coord(-S, S);
  std::int64_t hits = 0;
  for (std::int64_t k = 0; k < samples; ++k) {
    const double x = coord(rng), y = coord(rng);
    hits += omega_contains_point(x, y, spec);
  }
  const double box = 4.0 * S * S;
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return MonteCarloEstimate{box * p, box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples, seed};
}

MonteCarloEstimate omega_perimeter_monte_carlo(const OmegaSpec& spec, std::int64_t samples, double eps,
                                               std::uint64_t seed) {
  if (samples < 1 || !(eps > 0.0)) throw DomainError("omega_perimeter_monte_carlo: need samples > 0 and eps > 0");
  std::mt19937_64 rng(seed);
  const double S = static_cast<double>(spec.S);
  const double half = S + eps;  // needles starting outside can still cross the outer circle
  std::uniform_real_distribution<double> coord(-half, half);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::int64_t crossings = 0;
  for (std::int64_t k = 0; k < samples; ++k) {
    const double x = coord(rng), y = coord(rng), t = angle(rng);
    crossings += omega_contains_point(x, y, spec) != omega_contains_point(x + eps * std::cos(t), y + eps * std::sin(t), spec);
  }
  const double box = 4.0 * half * half;
  const double p = static_cast<double>(crossings) / static_cast<double>(samples);
  const double scale = kPi * box / (2.0 * eps);
  return MonteCarloEstimate{scale * p, scale * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples, seed};
}

}  // namespace fordsph
