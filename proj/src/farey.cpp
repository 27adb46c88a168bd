#include "fordsph/farey.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace fordsph {

namespace {

using i128 = __int128;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Position of r/s against the square, scaled by |s|^2.
struct Scaled {
  GInt c;
  std::int64_t n;
};

Scaled scaled(const GFraction& f) { return Scaled{f.r * conj(f.s.value()), f.s.norm()}; }

enum Edge { kLeft, kRight, kBottom, kTop };

bool on_edge(const Scaled& p, Edge e) {
  switch (e) {
    case kLeft: return p.c.re == 0;
    case kRight: return p.c.re == p.n;
    case kBottom: return p.c.im == 0;
    case kTop: return p.c.im == p.n;
  }
  return false;
}

// Mirror image of r/s across an edge line of I2.
GFraction reflect(const GFraction& f, Edge e) {
  const GInt r = conj(f.r);
  const GInt s = conj(f.s.value());
  switch (e) {
    case kLeft: return GFraction::make(-r, s);                          // -conj(z)
    case kRight: return GFraction::make(GInt{2} * s - r, s);            // 2 - conj(z)
    case kBottom: return GFraction::make(r, s);                         // conj(z)
    case kTop: return GFraction::make(r + GInt{0, 2} * s, s);           // conj(z) + 2i
  }
  return f;
}

}  // namespace

GFraction GFraction::make(const GInt& r, const GInt& s) {
  if (s.is_zero()) throw DomainError("fraction with zero denominator");
  const CanonicalGInt g = gcd(r, s);
  const GInt rr = exact_div(r, g);
  const Canonicalized cs = canonicalize(exact_div(s, g));
  // r/s = rr / (u c) = (conj(u) rr) / c
  GFraction out;
  out.r = conj(cs.unit) * rr;
  out.s = cs.canonical;
  return out;
}

bool operator<(const GFraction& a, const GFraction& b) {
  const auto na = a.s.norm(), nb = b.s.norm();
  if (na != nb) return na < nb;
  if (a.s != b.s) return a.s < b.s;
  return a.r < b.r;
}

std::string to_string(const GFraction& f) { return to_string(f.r) + "/" + to_string(f.s.value()); }

bool in_i2(const GFraction& f) {
  const Scaled p = scaled(f);
  return p.c.re >= 0 && p.c.re <= p.n && p.c.im >= 0 && p.c.im <= p.n;
}

bool on_i2_boundary(const GFraction& f) {
  const Scaled p = scaled(f);
  return in_i2(f) && (on_edge(p, kLeft) || on_edge(p, kRight) || on_edge(p, kBottom) || on_edge(p, kTop));
}

Sphere sphere_of(const GFraction& f) {
  const Scaled p = scaled(f);
  return Sphere{p.c.re, p.c.im, p.n, 2 * p.n};
}

bool is_adjacent(const GFraction& a, const GFraction& b) {
  return norm(b.r * a.s.value() - a.r * b.s.value()) == 1;
}

bool spheres_tangent(const GFraction& a, const GFraction& b) {
  if (a == b) throw DomainError("spheres_tangent: a sphere is not tangent to itself");
  const Sphere sa = sphere_of(a), sb = sphere_of(b);
  // Scale every length by 2 * den_a * den_b so all coordinates are integers:
  // horizontal offsets 2(x_a den_b - x_b den_a), heights den_b and den_a.
  const i128 na = sa.den, nb = sb.den;
  const i128 dx = 2 * (static_cast<i128>(sa.re_num) * nb - static_cast<i128>(sb.re_num) * na);
  const i128 dy = 2 * (static_cast<i128>(sa.im_num) * nb - static_cast<i128>(sb.im_num) * na);
  const i128 dz = nb - na;
  const i128 rsum = nb + na;
  return dx * dx + dy * dy + dz * dz == rsum * rsum;
}

std::vector<GFraction> enumerate_gs(std::int64_t S) {
  if (S < 1) throw DomainError("enumerate_gs: S must be positive");
  std::vector<GFraction> out;
  const std::int64_t bound = S * S;
  for (std::int64_t a = 1; a * a <= bound; ++a)
    for (std::int64_t b = 0; a * a + b * b <= bound; ++b) {
      const GInt s{a, b};
      // r = s w with w in I2 spans Re r in [-b, a], Im r in [0, a + b].
      for (std::int64_t x = -b; x <= a; ++x)
        for (std::int64_t y = 0; y <= a + b; ++y) {
          const GInt r{x, y};
          if (!is_coprime(r, s)) continue;
          GFraction f;
          f.r = r;
          f.s = CanonicalGInt::from(s);
          if (in_i2(f)) out.push_back(f);
        }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GFraction> mediant_children(const GFraction& a, const GFraction& b) {
  if (!is_adjacent(a, b)) throw DomainError("mediant_children: " + to_string(a) + " and " + to_string(b) + " are not adjacent");
  const Scaled pa = scaled(a), pb = scaled(b);
  std::vector<GFraction> out;
  for (const GInt& u : kUnits) {
    const GInt den = a.s.value() + u * b.s.value();
    if (den.is_zero()) continue;
    GFraction child = GFraction::make(a.r + u * b.r, den);
    if (!in_i2(child)) {
      const Scaled pc = scaled(child);
      bool ok = true;
      const std::pair<bool, Edge> violated[] = {
          {pc.c.re < 0, kLeft}, {pc.c.re > pc.n, kRight}, {pc.c.im < 0, kBottom}, {pc.c.im > pc.n, kTop}};
      for (const auto& [bad, edge] : violated) {
        if (!bad) continue;
        if (!on_edge(pa, edge) || !on_edge(pb, edge)) {
          ok = false;
          break;
        }
        child = reflect(child, edge);
      }
      if (!ok || !in_i2(child)) continue;
    }
    out.push_back(child);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<GFraction> generate_gs_by_mediants(std::int64_t S) {
  if (S < 1) throw DomainError("generate_gs_by_mediants: S must be positive");
  const std::int64_t bound = S * S;
  std::vector<GFraction> list = {GFraction::make(GInt{0}, GInt{1}), GFraction::make(GInt{1}, GInt{1}),
                                 GFraction::make(GInt{0, 1}, GInt{1}), GFraction::make(GInt{1, 1}, GInt{1})};
  std::set<GFraction> seen(list.begin(), list.end());
  // Every pair (j < i) is expanded exactly once, when i is reached.
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (!is_adjacent(list[i], list[j])) continue;
      for (const GFraction& child : mediant_children(list[i], list[j])) {
        if (child.s.norm() > bound) continue;
        if (seen.insert(child).second) list.push_back(child);
      }
    }
  std::sort(list.begin(), list.end());
  return list;
}

bool is_consecutive(const GFraction& a, const GFraction& b, std::int64_t S) {
  if (!is_adjacent(a, b)) return false;
  for (const GInt& u : kUnits)
    if (norm(a.s.value() + u * b.s.value()) > S * S) return true;
  return false;
}

bool consecutive_denominator_conditions(const CanonicalGInt& s, const CanonicalGInt& s2, std::int64_t S) {
  const std::int64_t bound = S * S;
  if (s.norm() > bound || s2.norm() > bound) return false;
  if (!is_coprime(s, s2)) return false;
  for (const GInt& u : kUnits)
    if (norm(s2.value() + u * s.value()) > bound) return true;
  return false;
}

std::vector<FractionPair> consecutive_pairs_for_denoms(const CanonicalGInt& s, const CanonicalGInt& s2,
                                                       std::int64_t S) {
  if (!consecutive_denominator_conditions(s, s2, S))
    throw DomainError("consecutive_pairs_for_denoms: " + to_string(s.value()) + ", " + to_string(s2.value()) +
                      " are not consecutive denominators for S = " + std::to_string(S));
  const GInt inv = inverse_mod(s2, s);
  std::vector<FractionPair> out;
  for (const GInt& u : kUnits) {
    // r s' - r' s = u: r == u s'^-1 (mod s), then r' = (r s' - u) / s.
    const GInt r0 = div_rem(u * inv, s).remainder;
    const GInt r1 = exact_div(r0 * s2.value() - u, s);
    // Translating both numerators by k s and k s' keeps the determinant.
    const GInt c = r0 * conj(s.value());
    const std::int64_t n = s.norm();
    for (std::int64_t kx = ceil_div(-c.re, n); kx <= floor_div(n - c.re, n); ++kx)
      for (std::int64_t ky = ceil_div(-c.im, n); ky <= floor_div(n - c.im, n); ++ky) {
        const GInt k{kx, ky};
        GFraction f, g;
        f.r = r0 + k * s.value();
        f.s = s;
        g.r = r1 + k * s2.value();
        g.s = s2;
        if (!in_i2(f) || !in_i2(g)) continue;
        out.emplace_back(f, g);
      }
  }
  // Unordered pairs: with s == s' the same pair arises from u and -u.
  auto key = [](const FractionPair& p) { return p.second < p.first ? FractionPair{p.second, p.first} : p; };
  std::sort(out.begin(), out.end(), [&](const FractionPair& x, const FractionPair& y) { return key(x) < key(y); });
  out.erase(std::unique(out.begin(), out.end(), [&](const FractionPair& x, const FractionPair& y) { return key(x) == key(y); }),
            out.end());
  return out;
}

bool is_boundary_pair(const FractionPair& pair) {
  if (!in_i2(pair.first) || !in_i2(pair.second)) return false;
  const Scaled a = scaled(pair.first), b = scaled(pair.second);
  for (Edge e : {kLeft, kRight, kBottom, kTop})
    if (on_edge(a, e) && on_edge(b, e)) return true;
  return false;
}

std::vector<RealFrac> enumerate_fq(std::int64_t Q) {
  if (Q < 1) throw DomainError("enumerate_fq: Q must be positive");
  std::vector<RealFrac> out{{0, 1}};
  std::int64_t a = 0, b = 1, c = 1, d = Q;
  while (c <= Q) {
    out.push_back({c, d});
    const std::int64_t k = (Q + b) / d;
    const std::int64_t e = k * c - a, f = k * d - b;
    a = c;
    b = d;
    c = e;
    d = f;
    if (a == 1 && b == 1) break;
  }
  return out;
}

bool is_consecutive_fq(const RealFrac& x, const RealFrac& y, std::int64_t Q) {
  return x.q * y.p - x.p * y.q == 1 && x.q + y.q > Q;
}

}  // namespace fordsph
