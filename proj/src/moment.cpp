#include "fordsph/moment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>

#include "fordsph/arith.hpp"
#include "fordsph/errors.hpp"
#include "fordsph/farey.hpp"
#include "fordsph/numeric.hpp"
#include "fordsph/parallel.hpp"
#include "fordsph/quadrature.hpp"
#include "fordsph/region.hpp"

namespace fordsph {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<GInt> canonical_upto(std::int64_t S) {
  std::vector<GInt> out;
  for (std::int64_t a = 1; a <= S; ++a)
    for (std::int64_t b = 0; a * a + b * b <= S * S; ++b) out.emplace_back(a, b);
  return out;
}

// sum_n hist[n] * weight / n in increasing n.
double histogram_sum(const std::vector<std::int64_t>& hist, double weight) {
  CompensatedSum sum;
  for (std::size_t n = 1; n < hist.size(); ++n)
    if (hist[n] != 0) sum += weight * static_cast<double>(hist[n]) / static_cast<double>(n);
  return sum.value();
}

void check_S(std::int64_t S, std::int64_t cap, const char* what) {
  if (S < 1) throw DomainError(std::string(what) + ": S must be positive");
  if (S > cap)
    throw CapExceeded(std::string(what) + ": S = " + std::to_string(S) + " exceeds the cap " + std::to_string(cap) +
                      "; raise the cap explicitly if the runtime is acceptable");
}

}  // namespace

double constant_C() {
  const double end = 1.0 / std::numbers::sqrt2;
  auto f = [](double u) { return -std::log(std::numbers::sqrt2 * u) * std::sqrt(1.0 - u * u); };
  QuadratureOptions opt;
  opt.abs_tol = 1e-12;
  // The log singularity sits at 0; a graded split keeps the panel count small.
  CompensatedSum sum;
  double lo = 0.0;
  for (double hi : {1e-8, 1e-4, 1e-2, end}) {
    sum += integrate(f, lo, hi, opt).value;
    lo = hi;
  }
  return sum.value();
}

double constant_C_by_parts() {
  const double end = 1.0 / std::numbers::sqrt2;
  auto g = [](double u) { return u == 0.0 ? 1.0 : std::asin(u) / u; };
  QuadratureOptions opt;
  opt.abs_tol = 1e-13;
  return 0.5 * (0.25 + kPi / 8.0) + 0.5 * integrate(g, 0.0, end, opt).value;
}

const ConstantsBundle& constants() {
  static const ConstantsBundle bundle = [] {
    ConstantsBundle b;
    b.C = constant_C();
    const ZetaTruncation& z = zeta_i_2_reference();
    b.zeta_radius = z.radius;
    b.zeta_tail_bound = zeta_tail_bound_s2(z.radius);
    b.zeta_i_2 = z.value;
    b.zeta_i_inv_2 = z.inverse_value;
    // Both truncations miss at most the tail bound, so their product is 1 up
    // to about three times that bound.
    if (std::fabs(z.value * z.inverse_value - 1.0) > 3.0 * b.zeta_tail_bound * z.value)
      throw NumericalError("constants: truncated zeta_i(2) and its inverse disagree beyond the tail bound");
    b.main_coeff = kPi * b.zeta_i_inv_2 * (8.0 * b.C - 1.0);
    b.z1 = kPi / 8.0 * b.zeta_i_inv_2;
    return b;
  }();
  return bundle;
}

double main_term(std::int64_t S) {
  const double s = static_cast<double>(S);
  return constants().main_coeff * s * s;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::direct: return "direct";
    case Method::counting: return "counting";
    case Method::main_term: return "main-term";
  }
  return "?";
}

std::string to_string(Normalization n) {
  switch (n) {
    case Normalization::none: return "none";
    case Normalization::omega_full: return "omega-full";
    case Normalization::omega_quarter: return "omega-quarter";
  }
  return "?";
}

Method parse_method(const std::string& text) {
  for (Method m : {Method::direct, Method::counting, Method::main_term})
    if (text == to_string(m)) return m;
  throw InputError("unknown method '" + text + "' (expected direct, counting or main-term)");
}

Normalization parse_normalization(const std::string& text) {
  for (Normalization n : {Normalization::none, Normalization::omega_full, Normalization::omega_quarter})
    if (text == to_string(n)) return n;
  throw InputError("unknown normalization '" + text + "' (expected omega-full or omega-quarter)");
}

MomentReport moment_first_direct(std::int64_t S, unsigned threads, std::int64_t cap) {
  check_S(S, cap, "moment_first_direct");
  const auto start = Clock::now();
  const std::vector<GFraction> g = enumerate_gs(S);
  const std::size_t bound = static_cast<std::size_t>(S * S);
  // hist[i][n]: endpoints of norm n among consecutive pairs (g[i], g[j]), j > i.
  std::vector<std::vector<std::int64_t>> hist(g.size());
  parallel_for(g.size(), threads, [&](std::size_t i) {
    std::vector<std::int64_t> h(bound + 1, 0);
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (is_consecutive(g[i], g[j], S)) {
        ++h[static_cast<std::size_t>(g[i].s.norm())];
        ++h[static_cast<std::size_t>(g[j].s.norm())];
      }
    hist[i] = std::move(h);
  });
  std::vector<std::int64_t> total(bound + 1, 0);
  for (const auto& h : hist)
    for (std::size_t n = 0; n <= bound; ++n) total[n] += h[n];
  MomentReport r;
  r.S = S;
  r.method = Method::direct;
  r.value = histogram_sum(total, 0.5);
  std::int64_t endpoints = 0;
  for (auto c : total) endpoints += c;
  r.pairs = endpoints / 2;
  r.main_term = main_term(S);
  r.residual = r.value - r.main_term;
  r.elapsed_s = seconds_since(start);
  return r;
}

MomentReport moment_first_counting(std::int64_t S, Normalization normalization, unsigned threads, std::int64_t cap) {
  if (normalization == Normalization::none) throw InputError("moment_first_counting needs omega-full or omega-quarter");
  check_S(S, cap, "moment_first_counting");
  const auto start = Clock::now();
  const std::vector<GInt> dens = canonical_upto(S);
  std::vector<std::int64_t> partners(dens.size());
  parallel_for(dens.size(), threads, [&](std::size_t k) {
    partners[k] = omega_quarter_count(OmegaSpec::make(CanonicalGInt::from(dens[k]), S), true);
  });
  const std::int64_t factor = normalization == Normalization::omega_full ? 4 : 1;
  std::vector<std::int64_t> hist(static_cast<std::size_t>(S * S) + 1, 0);
  std::int64_t total = 0;
  for (std::size_t k = 0; k < dens.size(); ++k) {
    hist[static_cast<std::size_t>(norm(dens[k]))] += factor * partners[k];
    total += factor * partners[k];
  }
  MomentReport r;
  r.S = S;
  r.method = Method::counting;
  r.normalization = normalization;
  r.value = histogram_sum(hist, 2.0);
  r.pairs = total;
  r.main_term = main_term(S);
  r.residual = r.value - r.main_term;
  r.elapsed_s = seconds_since(start);
  return r;
}

MomentReport moment_main_term(std::int64_t S) {
  if (S < 0) throw DomainError("moment_main_term: S must be nonnegative");
  MomentReport r;
  r.S = S;
  r.method = Method::main_term;
  r.value = r.main_term = main_term(S);
  return r;
}

Calibration calibrate(Normalization normalization, std::int64_t S_lo, std::int64_t S_hi, unsigned threads) {
  if (S_lo < 1 || S_hi < S_lo) throw DomainError("calibrate: need 1 <= S_lo <= S_hi");
  Calibration c;
  c.normalization = normalization;
  double lo = 0.0, hi = 0.0;
  for (std::int64_t S = S_lo; S <= S_hi; ++S) {
    CalibrationRow row;
    row.S = S;
    row.direct = moment_first_direct(S, threads, S_hi).value;
    row.counting = moment_first_counting(S, normalization, threads, std::max(S_hi, kDefaultCountingCap)).value;
    row.ratio = row.direct / row.counting;
    lo = c.rows.empty() ? row.ratio : std::min(lo, row.ratio);
    hi = c.rows.empty() ? row.ratio : std::max(hi, row.ratio);
    c.rows.push_back(row);
  }
  c.constant = 0.5 * (lo + hi);
  c.max_rel_deviation = 0.5 * (hi - lo) / c.constant;
  return c;
}

const Calibration& default_calibration(Normalization normalization) {
  static std::mutex mutex;
  static std::map<Normalization, Calibration> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(normalization);
  if (it == cache.end()) it = cache.emplace(normalization, calibrate(normalization)).first;
  return it->second;
}

SumWithPrediction sum_A(std::int64_t S) {
  if (S < 1) throw DomainError("sum_A: S must be positive");
  const ArithTable table(S * S);
  CompensatedSum sum;
  const double s_real = static_cast<double>(S);
  for (const ArithTable::Entry& e : table.entries()) {
    const double n = static_cast<double>(e.norm);
    sum += static_cast<double>(e.phi) / (n * n) * omega_area_from(n, s_real);
  }
  const ConstantsBundle& k = constants();
  return {sum.value(), kPi / 2.0 * k.zeta_i_inv_2 * (8.0 * k.C - 1.0) * s_real * s_real};
}

double sum_B(std::int64_t S, double eps) {
  if (S < 1) throw DomainError("sum_B: S must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("sum_B: eps must lie in (0, 1)");
  const double perimeter = boundary_length_surrogate(OmegaSpec::make(CanonicalGInt::one(), S));
  CompensatedSum sum;
  for (const GInt& s : canonical_upto(S)) sum += std::pow(static_cast<double>(norm(s)), eps / 2.0 - 1.0);
  return perimeter * sum.value();
}

std::vector<double> sum_B_growth(const std::vector<std::int64_t>& ladder, double eps) {
  std::vector<double> out;
  for (std::int64_t S : ladder) out.push_back(sum_B(S, eps) / std::pow(static_cast<double>(S), 1.0 + eps));
  return out;
}

SumWithPrediction sum_phi_over_norm2(std::int64_t S) {
  if (S < 1) throw DomainError("sum_phi_over_norm2: S must be positive");
  const ArithTable table(S * S);
  CompensatedSum sum;
  for (const ArithTable::Entry& e : table.entries())
    sum += static_cast<double>(e.phi) / static_cast<double>(e.norm);
  const double s_real = static_cast<double>(S);
  return {sum.value(), kPi / 4.0 * constants().zeta_i_inv_2 * s_real * s_real};
}

double sum_phi_over_norm4(std::int64_t S) {
  if (S < 1) throw DomainError("sum_phi_over_norm4: S must be positive");
  const ArithTable table(S * S);
  CompensatedSum sum;
  for (const ArithTable::Entry& e : table.entries()) {
    const double n = static_cast<double>(e.norm);
    sum += static_cast<double>(e.phi) / (n * n);
  }
  return sum.value();
}

LogFit fit_phi_over_norm4(const std::vector<std::int64_t>& ladder) {
  if (ladder.size() < 2) throw DomainError("fit_phi_over_norm4: need at least two ladder points");
  if (!std::is_sorted(ladder.begin(), ladder.end()) || ladder.front() < 1 ||
      std::adjacent_find(ladder.begin(), ladder.end()) != ladder.end())
    throw DomainError("fit_phi_over_norm4: ladder must be strictly increasing and positive");
  const std::int64_t top = ladder.back();
  const ArithTable table(top * top);
  // Each term goes to the first rung that contains it; prefix sums give the rungs.
  std::vector<CompensatedSum> band(ladder.size());
  for (const ArithTable::Entry& e : table.entries()) {
    std::size_t k = 0;
    while (ladder[k] * ladder[k] < e.norm) ++k;
    const double n = static_cast<double>(e.norm);
    band[k] += static_cast<double>(e.phi) / (n * n);
  }
  LogFit fit;
  fit.ladder = ladder;
  double running = 0.0;
  for (const CompensatedSum& b : band) fit.values.push_back(running += b.value());

  const double m = static_cast<double>(ladder.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    const double x = std::log(static_cast<double>(ladder[k])), y = fit.values[k];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / m;
  fit.z2_estimate = fit.intercept - constants().z1;
  return fit;
}

std::vector<SweepRow> report_sweep(const std::vector<std::int64_t>& S_values, const std::vector<Method>& methods,
                                   const SweepOptions& options) {
  std::vector<SweepRow> rows;
  for (std::int64_t S : S_values)
    for (Method m : methods) {
      SweepRow row;
      row.report.S = S;
      row.report.method = m;
      try {
        switch (m) {
          case Method::direct: row.report = moment_first_direct(S, options.threads, options.direct_cap); break;
          case Method::counting:
            row.report = moment_first_counting(S, options.normalization, options.threads, options.counting_cap);
            if (options.with_calibration) row.report.calibration = default_calibration(options.normalization).constant;
            break;
          case Method::main_term: row.report = moment_main_term(S); break;
        }
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
  return rows;
}

}  // namespace fordsph
