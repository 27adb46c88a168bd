#include "fordsph/verify.hpp"

#include <cmath>
#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "fordsph/arith.hpp"
#include "fordsph/errors.hpp"
#include "fordsph/farey.hpp"
#include "fordsph/moment.hpp"
#include "fordsph/numeric.hpp"
#include "fordsph/quadrature.hpp"
#include "fordsph/region.hpp"

namespace fordsph {

namespace {

struct Context {
  std::uint64_t seed;
  unsigned threads;
};

struct Outcome {
  bool passed;
  std::string detail;
};

struct Check {
  const char* name;
  const char* anchor;
  std::function<Outcome(const Context&)> run;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::vector<CanonicalGInt> canonical_upto_norm(std::int64_t max_norm) {
  std::vector<CanonicalGInt> out;
  for (std::int64_t re = 1; re * re <= max_norm; ++re)
    for (std::int64_t im = 0; re * re + im * im <= max_norm; ++im) out.push_back(CanonicalGInt::from(GInt{re, im}));
  return out;
}

// Units of Z[i]/qZ[i] over the fundamental domain q [0,1)^2.
std::int64_t phi_by_residues(const CanonicalGInt& q) {
  const GInt s = q.value();
  const std::int64_t n = q.norm();
  std::int64_t units = 0;
  for (std::int64_t x = -s.im; x <= s.re; ++x)
    for (std::int64_t y = 0; y <= s.re + s.im; ++y) {
      const GInt t = GInt{x, y} * conj(s);
      if (t.re < 0 || t.re >= n || t.im < 0 || t.im >= n) continue;
      units += is_coprime(GInt{x, y}, s);
    }
  return units;
}

// ---------------------------------------------------------------- arith

Outcome divisor_sums(const Context&) {
  for (const CanonicalGInt& q : canonical_upto_norm(10'000)) {
    std::int64_t phi_sum = 0, mu_sum = 0;
    for (const CanonicalGInt& d : divisors(q)) {
      phi_sum += phi_i(d);
      mu_sum += mu_i(d);
    }
    if (phi_sum != q.norm() || mu_sum != (q.norm() == 1 ? 1 : 0))
      return {false, "fails at q = " + to_string(q.value())};
  }
  return {true, "all canonical q with norm <= 10000"};
}

Outcome phi_residues(const Context&) {
  for (const CanonicalGInt& q : canonical_upto_norm(400))
    if (phi_i(q) != phi_by_residues(q)) return {false, "fails at q = " + to_string(q.value())};
  return {true, "all canonical q with norm <= 400"};
}

Outcome sieve_table(const Context&) {
  const ArithTable table(10'000);
  for (const ArithTable::Entry& e : table.entries()) {
    const CanonicalGInt q = CanonicalGInt::from(e.q);
    if (e.mu != mu_i(q) || e.phi != phi_i(q)) return {false, "fails at q = " + to_string(e.q)};
  }
  return {true, std::to_string(table.size()) + " entries"};
}

Outcome r2_scan(const Context&) {
  for (std::int64_t n = 0; n <= 2000; ++n) {
    std::int64_t count = 0;
    for (std::int64_t a = -45; a <= 45; ++a)
      for (std::int64_t b = -45; b <= 45; ++b) count += a * a + b * b == n;
    if (count != r2(n)) return {false, "fails at n = " + std::to_string(n)};
  }
  return {true, "n <= 2000"};
}

Outcome zeta_consistency(const Context&) {
  const ConstantsBundle& k = constants();
  const double product = k.zeta_i_2 * k.zeta_i_inv_2;
  return {std::fabs(product - 1.0) <= 3.0 * k.zeta_tail_bound * k.zeta_i_2,
          "zeta_i(2) = " + fmt(k.zeta_i_2) + ", product with inverse - 1 = " + fmt(product - 1.0) +
              ", tail bound " + fmt(k.zeta_tail_bound)};
}

Outcome phi_partial_sum(const Context&) {
  const PhiSum p = sum_phi_upto(512);
  const double ratio = static_cast<double>(p.exact) / p.main_term;
  return {std::fabs(ratio - 1.0) <= 0.02, "Q = 512, exact / main term = " + fmt(ratio)};
}

// ---------------------------------------------------------------- farey

Outcome gs_brute(const Context&) {
  for (std::int64_t S = 1; S <= 6; ++S) {
    std::set<GFraction> brute;
    for (std::int64_t a = -S; a <= S; ++a)
      for (std::int64_t b = -S; b <= S; ++b) {
        const GInt s{a, b};
        if (s.is_zero() || norm(s) > S * S) continue;
        for (std::int64_t x = -2 * S; x <= 2 * S; ++x)
          for (std::int64_t y = -2 * S; y <= 2 * S; ++y) {
            const GInt t = GInt{x, y} * conj(s);
            if (t.re < 0 || t.re > norm(s) || t.im < 0 || t.im > norm(s) || !is_coprime(GInt{x, y}, s)) continue;
            brute.insert(GFraction::make(GInt{x, y}, s));
          }
      }
    const auto g = enumerate_gs(S);
    if (std::set<GFraction>(g.begin(), g.end()) != brute) return {false, "differs at S = " + std::to_string(S)};
  }
  return {true, "S <= 6"};
}

Outcome mediant_closure(const Context&) {
  for (std::int64_t S = 1; S <= 10; ++S)
    if (generate_gs_by_mediants(S) != enumerate_gs(S)) return {false, "differs at S = " + std::to_string(S)};
  return {true, "set equality for S <= 10, |G_10| = " + std::to_string(enumerate_gs(10).size())};
}

Outcome tangency(const Context&) {
  const auto g = enumerate_gs(4);
  std::int64_t tangent = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const bool t = spheres_tangent(g[i], g[j]);
      if (t != is_adjacent(g[i], g[j])) return {false, to_string(g[i]) + ", " + to_string(g[j])};
      tangent += t;
    }
  return {true, std::to_string(tangent) + " tangent pairs in G_4"};
}

Outcome denominator_pairs(const Context&) {
  std::int64_t degenerate = 0, regular = 0;
  for (std::int64_t S = 1; S <= 6; ++S) {
    const auto g = enumerate_gs(S);
    std::map<std::pair<CanonicalGInt, CanonicalGInt>, std::int64_t> realized;
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j)
        if (is_consecutive(g[i], g[j], S)) ++realized[std::minmax(g[i].s, g[j].s)];
    const auto dens = canonical_upto_norm(S * S);
    std::size_t qualifying = 0;
    for (const auto& s : dens)
      for (const auto& t : dens) {
        if (t < s || !consecutive_denominator_conditions(s, t, S)) continue;
        ++qualifying;
        auto it = realized.find({s, t});
        if (it == realized.end()) return {false, "unrealized pair at S = " + std::to_string(S)};
        const auto pairs = consecutive_pairs_for_denoms(s, t, S);
        if (static_cast<std::int64_t>(pairs.size()) != it->second) return {false, "pair count differs"};
        const bool boundary = std::any_of(pairs.begin(), pairs.end(), is_boundary_pair);
        if (boundary)
          ++degenerate;
        else if (pairs.size() != 4)
          return {false, "interior pair with " + std::to_string(pairs.size()) + " fraction pairs"};
        else
          ++regular;
      }
    if (qualifying != realized.size()) return {false, "extra realized pairs at S = " + std::to_string(S)};
  }
  return {true, std::to_string(regular) + " interior denominator pairs with 4 fraction pairs, " +
                    std::to_string(degenerate) + " boundary orbits logged"};
}

Outcome real_farey(const Context&) {
  for (std::int64_t Q = 1; Q <= 50; ++Q) {
    const auto f = enumerate_fq(Q);
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j)
        if (is_consecutive_fq(f[i], f[j], Q) != (j == i + 1)) return {false, "Q = " + std::to_string(Q)};
  }
  return {true, "Q <= 50"};
}

// ---------------------------------------------------------------- region

std::vector<OmegaSpec> specs_upto(std::int64_t S) {
  std::vector<OmegaSpec> out;
  for (const CanonicalGInt& s : canonical_upto_norm(S * S)) out.push_back(OmegaSpec::make(s, S));
  return out;
}

Outcome rotation(const Context&) {
  for (std::int64_t S = 1; S <= 10; ++S)
    for (const OmegaSpec& spec : specs_upto(S)) {
      for (std::int64_t x = -S; x <= S; ++x)
        for (std::int64_t y = -S; y <= S; ++y)
          if (omega_contains(GInt{x, y}, spec) != omega_contains(GInt{-y, x}, spec))
            return {false, "S = " + std::to_string(S)};
      if (omega_lattice_count(spec, true) != 4 * omega_quarter_count(spec, true))
        return {false, "full count is not four quarters at S = " + std::to_string(S)};
    }
  return {true, "S <= 10"};
}

Outcome area_quadrature(const Context& ctx) {
  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double S = 1.0 + 200.0 * unit(rng), a = S * unit(rng);
    const double closed = omega_area_from(a * a, S);
    worst = std::max(worst, std::fabs(omega_area_polar_quadrature(a * a, S) / closed - 1.0));
  }
  return {worst <= 1e-9, "100 random (s, S), worst relative gap " + fmt(worst)};
}

Outcome area_vs_count(const Context&) {
  double worst = 0.0;
  for (std::int64_t S : {8, 16, 32, 64}) {
    for (const OmegaSpec& spec : specs_upto(S))
      worst = std::max(worst, std::fabs(static_cast<double>(omega_lattice_count(spec, false)) - omega_area(spec)) /
                                  static_cast<double>(S));
  }
  return {worst <= 1.0, "max |count - area| / S over S <= 64: " + fmt(worst)};
}

Outcome coprime_prediction(const Context&) {
  double mean = 0.0;
  const auto specs = specs_upto(32);
  for (const OmegaSpec& spec : specs) {
    const double pred = coprime_count_prediction(spec);
    mean += std::fabs(static_cast<double>(omega_lattice_count(spec, true)) - pred) / pred;
  }
  mean /= static_cast<double>(specs.size());
  return {mean <= 0.10, "S = 32, mean relative deviation " + fmt(mean)};
}

Outcome area_bounds(const Context&) {
  for (std::int64_t S : {4, 8, 16})
    for (const OmegaSpec& spec : specs_upto(S))
      if (!omega_area_bounds_check(spec)) return {false, "s = " + to_string(spec.s.value())};
  return {true, "S in {4, 8, 16}"};
}

Outcome perimeter(const Context& ctx) {
  const OmegaSpec spec = OmegaSpec::make(CanonicalGInt::from(GInt{1, 1}), 4);
  const MonteCarloEstimate p = omega_perimeter_monte_carlo(spec, 1'000'000, 0.02, ctx.seed);
  const double surrogate = boundary_length_surrogate(spec);
  return {surrogate >= p.value + 4.0 * p.std_error,
          "s = 1+i, S = 4: estimate " + fmt(p.value) + " +- " + fmt(p.std_error) + ", surrogate " + fmt(surrogate)};
}

// ---------------------------------------------------------------- moment

Outcome constant_c(const Context&) {
  const double C = constants().C, alt = constant_C_by_parts();
  return {std::fabs(C - 0.68644) <= 1e-4 && std::fabs(C - alt) <= 1e-8 && C > 0.5,
          "C = " + fmt(C) + ", by parts differs by " + fmt(C - alt)};
}

Outcome direct_baseline(const Context& ctx) {
  const double v = moment_first_direct(1, ctx.threads).value;
  return {v == 4.0, "direct(1) = " + fmt(v)};
}

Outcome calibration(const Context& ctx) {
  const Calibration c = calibrate(Normalization::omega_quarter, 4, 12, ctx.threads);
  return {c.max_rel_deviation <= 0.05, "S = 4..12, direct / omega-quarter = " + fmt(c.constant) + " +- " +
                                           fmt(100.0 * c.max_rel_deviation) + "%"};
}

Outcome counting_convergence(const Context& ctx) {
  double previous = 1.0;
  std::string detail;
  for (std::int64_t S : {32, 64, 128}) {
    const MomentReport r = moment_first_counting(S, Normalization::omega_full, ctx.threads);
    const double gap = std::fabs(r.value / r.main_term - 1.0);
    detail += (detail.empty() ? "" : ", ") + std::to_string(S) + ": " + fmt(gap);
    if (gap >= previous) return {false, detail};
    previous = gap;
  }
  return {previous <= 0.10, "relative gap to main term " + detail};
}

Outcome a_sum(const Context&) {
  const SumWithPrediction a = sum_A(512);
  return {std::fabs(a.exact / a.prediction - 1.0) <= 0.05, "S = 512, ratio " + fmt(a.exact / a.prediction)};
}

Outcome phi_norm2(const Context&) {
  const SumWithPrediction p = sum_phi_over_norm2(512);
  return {std::fabs(p.exact / p.prediction - 1.0) <= 0.02, "S = 512, ratio " + fmt(p.exact / p.prediction)};
}

Outcome phi_norm4(const Context&) {
  const LogFit fit = fit_phi_over_norm4({64, 128, 256, 512, 1024, 2048});
  const double target = 4.0 * constants().z1;
  return {std::fabs(fit.slope / target - 1.0) <= 0.05,
          "slope " + fmt(fit.slope) + " vs " + fmt(target) + ", z2 estimate " + fmt(fit.z2_estimate)};
}

Outcome b_sum(const Context&) {
  const auto growth = sum_B_growth({16, 32, 64, 128}, 0.1);
  std::string detail;
  for (double g : growth) detail += (detail.empty() ? "" : ", ") + fmt(g);
  const double limit = 4.0 * kPi * kPi / 0.1;
  return {std::all_of(growth.begin(), growth.end(), [&](double g) { return g < limit; }),
          "B(S)/S^1.1 = " + detail + " (bounded by " + fmt(limit) + ")"};
}

const std::vector<std::pair<std::string, std::vector<Check>>>& registry() {
  static const std::vector<std::pair<std::string, std::vector<Check>>> r = {
      {"arith",
       {{"divisor-sums", "sum of phi_i over divisors is |q|^2, of mu_i is [q = 1]", divisor_sums},
        {"phi-residues", "phi_i counts the units of Z[i]/qZ[i]", phi_residues},
        {"sieve-table", "sieved mu_i, phi_i match factorization", sieve_table},
        {"r2", "r_2(n) from factorization matches a lattice scan", r2_scan},
        {"zeta-inverse", "truncated zeta_i(2) and its Moebius inverse agree within the tail bound", zeta_consistency},
        {"phi-partial-sum", "sum of phi_i(q) for |q| <= Q ~ (pi/8) zeta_i^-1(2) Q^4", phi_partial_sum}}},
      {"farey",
       {{"enumeration", "G_S equals a brute-force scan", gs_brute},
        {"mediant-closure", "mediant closure of {0, 1, i, 1+i} is G_S", mediant_closure},
        {"tangency", "adjacent iff Ford spheres are tangent", tangency},
        {"denominator-pairs", "consecutive pairs are exactly the denominator-condition pairs, four per pair",
         denominator_pairs},
        {"real-farey", "a/b, c/d consecutive in F_Q iff bc - ad = 1 and b + d > Q", real_farey}}},
      {"region",
       {{"rotation", "Omega is invariant under z -> iz", rotation},
        {"area-quadrature", "closed-form area equals the polar integral", area_quadrature},
        {"area-count", "lattice count within c S of the area", area_vs_count},
        {"coprime-count", "coprime count ~ phi_i(s)/|s|^2 |Omega|", coprime_prediction},
        {"area-bounds", "area lower bounds in both regimes", area_bounds},
        {"perimeter", "boundary surrogate dominates the perimeter", perimeter}}},
      {"moment",
       {{"constant-C", "C ~ 0.68644 and > 1/2", constant_c},
        {"direct-baseline", "direct moment at S = 1 is 4", direct_baseline},
        {"calibration", "direct / counting stable over S = 4..12", calibration},
        {"counting-convergence", "counting moment / S^2 approaches the main coefficient", counting_convergence},
        {"sum-A", "A ~ (pi/2) zeta_i^-1(2) (8C - 1) S^2", a_sum},
        {"sum-phi-norm2", "sum phi_i/|s|^2 ~ (pi/4) zeta_i^-1(2) S^2", phi_norm2},
        {"sum-phi-norm4", "sum phi_i/|s|^4 has log-slope (pi/2) zeta_i^-1(2)", phi_norm4},
        {"sum-B", "B << S^(1+eps)", b_sum}}},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, checks] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

std::vector<CheckResult> run_verify(const std::string& suite, std::uint64_t seed, unsigned threads) {
  bool known = suite == "all";
  for (const auto& name : verify_suites()) known |= name == suite;
  if (!known) throw InputError("unknown suite '" + suite + "' (expected arith, farey, region, moment or all)");
  const Context ctx{seed, threads};
  std::vector<CheckResult> out;
  for (const auto& [name, checks] : registry()) {
    if (suite != "all" && suite != name) continue;
    for (const Check& c : checks) {
      CheckResult r{name, c.name, c.anchor, false, ""};
      try {
        const Outcome o = c.run(ctx);
        r.passed = o.passed;
        r.detail = o.detail;
      } catch (const std::exception& e) {
        r.detail = std::string("error: ") + e.what();
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace fordsph
