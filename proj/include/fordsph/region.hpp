#pragma once

// The region Omega(s, S) of partner denominators: points z with |z| <= S and
// |z + u s| > S for at least one unit u. Exact membership and lattice counts,
// the closed-form area, the coprime-count prediction phi_i(s)/|s|^2 |Omega|,
// and Monte Carlo validators for area and perimeter.

#include <cstdint>
#include <numbers>
#include <vector>

#include "fordsph/gint.hpp"

namespace fordsph {

struct OmegaSpec {
  CanonicalGInt s = CanonicalGInt::one();
  std::int64_t S = 1;

  // Largest supported S; keeps every intermediate product inside 64 bits.
  static constexpr std::int64_t kMaxS = std::int64_t{1} << 24;

  // DomainError unless 1 <= S <= kMaxS and norm(s) <= S^2.
  static OmegaSpec make(const CanonicalGInt& s, std::int64_t S);
};

// norm(z) <= S^2 and max_u norm(z + u s) > S^2. Since
// norm(z + u s) = norm(z) + norm(s) + 2 Re(conj(u) z conj(s)), the maximum
// over units is norm(z) + norm(s) + 2 max(|X|, |Y|) with X + iY = z conj(s).
bool omega_contains(const GInt& z, const OmegaSpec& spec);

// Real-point membership for sampling.
bool omega_contains_point(double x, double y, const OmegaSpec& spec);

// 4 S^2 t + 2 sqrt(2) |s| S sqrt(1 - |s|^2 / (2 S^2)) - 2 |s|^2 with
// t = asin(|s| / (sqrt(2) S)).
double omega_area(const OmegaSpec& spec);

// Same closed form from norm(s) and S. DomainError if norm_s > S^2 or S <= 0.
double omega_area_from(double norm_s, double S);

// The polar form 8 int_0^{pi/4} int_{r(t)}^S r dr dt, integrated numerically.
double omega_area_polar_quadrature(double norm_s, double S);

// Decides whether z is coprime to a fixed s using the Gaussian primes of s.
class CoprimeTester {
 public:
  explicit CoprimeTester(const CanonicalGInt& s);
  // Valid for |re z|, |im z| <= OmegaSpec::kMaxS.
  bool operator()(const GInt& z) const;

 private:
  std::vector<GInt> primes_;
};

// Lattice points of Omega over the whole plane, optionally with (z, s) = 1.
std::int64_t omega_lattice_count(const OmegaSpec& spec, bool coprime_filter);

// The same count restricted to Z[i]^+. Omega is invariant under z -> iz and
// excludes 0, so the full-plane count is exactly four times this.
std::int64_t omega_quarter_count(const OmegaSpec& spec, bool coprime_filter);

// phi_i(s) / |s|^2 * omega_area(spec).
double coprime_count_prediction(const OmegaSpec& spec);

// If S <= 2|s|: area >= 2|s|^2. Otherwise: area >= 2 (sqrt 7 - 1) S |s|.
bool omega_area_bounds_check(const OmegaSpec& spec);

// Upper-bound surrogate for the perimeter of Omega: kBoundarySurrogateFactor * S.
inline constexpr double kBoundarySurrogateFactor = 8.0 * std::numbers::pi;
double boundary_length_surrogate(const OmegaSpec& spec);

inline constexpr std::uint64_t kDefaultMonteCarloSeed = 20240611;

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

// Hit-or-miss area over the bounding square [-S, S]^2.
MonteCarloEstimate omega_area_monte_carlo(const OmegaSpec& spec, std::int64_t samples,
                                          std::uint64_t seed = kDefaultMonteCarloSeed);

// Buffon-needle perimeter estimate: a needle of length eps dropped uniformly in
// a box of area A crosses a curve of length L with probability 2 L eps / (pi A)
// for small eps, so L ~ (pi A / (2 eps)) * crossing fraction.
MonteCarloEstimate omega_perimeter_monte_carlo(const OmegaSpec& spec, std::int64_t samples, double eps,
                                               std::uint64_t seed = kDefaultMonteCarloSeed);

}  // namespace fordsph
