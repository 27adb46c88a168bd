#pragma once

// The first moment of consecutive Ford-sphere radius sums over G_S, computed
// three ways: direct enumeration of consecutive pairs, the counting pipeline
// through the region Omega, and the asymptotic main term. Also the partial
// sums A, B, sum phi_i/|s|^2 and sum phi_i/|s|^4 that drive the asymptotics.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fordsph {

// -int_0^{1/sqrt 2} ln(sqrt(2) u) sqrt(1 - u^2) du by adaptive quadrature with
// the log endpoint resolved by bisection. NumericalError on non-convergence.
double constant_C();

// The same constant after integrating by parts:
// (1/4 + pi/8) / 2 + (1/2) int_0^{1/sqrt 2} asin(u)/u du, a smooth integrand.
double constant_C_by_parts();

struct ConstantsBundle {
  double C = 0.0;
  double zeta_i_2 = 0.0;
  double zeta_i_inv_2 = 0.0;
  double main_coeff = 0.0;  // pi zeta_i_inv_2 (8C - 1)
  double z1 = 0.0;          // (pi/8) zeta_i_inv_2
  std::optional<double> z2_estimate;
  double zeta_radius = 0.0;
  double zeta_tail_bound = 0.0;
};

// Computed once per process. zeta_i^{-1}(2) comes from the mu_i-weighted
// truncation and must agree with 1 / zeta_i(2) within the tail bound;
// otherwise NumericalError. z2_estimate is left empty; see fit_phi_over_norm4.
const ConstantsBundle& constants();

// main_coeff * S^2.
double main_term(std::int64_t S);

enum class Method { direct, counting, main_term };
enum class Normalization { none, omega_full, omega_quarter };

std::string to_string(Method m);
std::string to_string(Normalization n);
Method parse_method(const std::string& text);            // InputError on unknown names
Normalization parse_normalization(const std::string& text);

struct MomentReport {
  std::int64_t S = 0;
  Method method = Method::main_term;
  Normalization normalization = Normalization::none;
  double value = 0.0;
  double main_term = 0.0;
  double residual = 0.0;  // value - main_term
  double elapsed_s = 0.0;
  std::optional<double> calibration;  // direct / counting under this normalization
  std::int64_t pairs = 0;             // consecutive fraction pairs (direct) or partner count (counting)

  friend bool operator==(const MomentReport&, const MomentReport&) = default;
};

inline constexpr std::int64_t kDefaultDirectCap = 12;
inline constexpr std::int64_t kDefaultCountingCap = 256;

// Sum of 1/(2|s|^2) + 1/(2|s'|^2) over unordered consecutive pairs of G_S.
// The sum is kept as an integer histogram over norms and converted at the end.
// CapExceeded if S > cap; DomainError if S < 1.
MomentReport moment_first_direct(std::int64_t S, unsigned threads = 1, std::int64_t cap = kDefaultDirectCap);

// 2 sum_{s in Z[i]^+, |s| <= S} N(s) / |s|^2 where N(s) is the coprime lattice
// count of Omega(s, S) over the full plane (omega_full) or over Z[i]^+
// (omega_quarter). CapExceeded if S > cap.
MomentReport moment_first_counting(std::int64_t S, Normalization normalization, unsigned threads = 1,
                                   std::int64_t cap = kDefaultCountingCap);

MomentReport moment_main_term(std::int64_t S);

struct CalibrationRow {
  std::int64_t S = 0;
  double direct = 0.0;
  double counting = 0.0;
  double ratio = 0.0;  // direct / counting
};

struct Calibration {
  Normalization normalization = Normalization::omega_full;
  std::vector<CalibrationRow> rows;
  // The centre of the smallest band containing every ratio, (max + min) / 2,
  // and the band half-width relative to it.
  double constant = 0.0;
  double max_rel_deviation = 0.0;
};

Calibration calibrate(Normalization normalization, std::int64_t S_lo = 4, std::int64_t S_hi = kDefaultDirectCap,
                      unsigned threads = 1);

// calibrate(normalization) over {4, ..., 12}, computed once per process.
const Calibration& default_calibration(Normalization normalization);

struct SumWithPrediction {
  double exact = 0.0;
  double prediction = 0.0;
};

// sum phi_i(s)/|s|^4 |Omega(s, S)| against (pi/2) zeta_i^{-1}(2) (8C - 1) S^2.
SumWithPrediction sum_A(std::int64_t S);

// sum_{|s| <= S} boundary_length_surrogate / |s|^{2 - eps}. DomainError unless 0 < eps < 1.
double sum_B(std::int64_t S, double eps);

// B(S) / S^{1 + eps} for each S of a ladder.
std::vector<double> sum_B_growth(const std::vector<std::int64_t>& ladder, double eps);

// sum phi_i(s)/|s|^2 against (pi/4) zeta_i^{-1}(2) S^2.
SumWithPrediction sum_phi_over_norm2(std::int64_t S);

double sum_phi_over_norm4(std::int64_t S);

struct LogFit {
  std::vector<std::int64_t> ladder;
  std::vector<double> values;
  double slope = 0.0;      // approaches 4 z1 = (pi/2) zeta_i^{-1}(2)
  double intercept = 0.0;  // z1 + z2
  double z2_estimate = 0.0;
};

// Least-squares a ln S + b through sum_phi_over_norm4 on the ladder, from one
// pass over a single table.
LogFit fit_phi_over_norm4(const std::vector<std::int64_t>& ladder);

struct SweepOptions {
  Normalization normalization = Normalization::omega_full;
  unsigned threads = 1;
  std::int64_t direct_cap = kDefaultDirectCap;
  std::int64_t counting_cap = kDefaultCountingCap;
  bool with_calibration = true;
};

struct SweepRow {
  MomentReport report;
  std::string error;  // empty on success
};

// One row per (S, method), S-major. A failing row keeps its S and method,
// records the error text, and the sweep continues.
std::vector<SweepRow> report_sweep(const std::vector<std::int64_t>& S_values, const std::vector<Method>& methods,
                                   const SweepOptions& options = {});

}  // namespace fordsph
