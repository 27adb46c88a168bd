#pragma once

// Gaussian rationals in the closed unit square I2 = [0,1] x [0,1]i, their
// Ford spheres, complex mediants, and the adjacency / consecutivity
// predicates on G_S. Also a small reference implementation for the real
// Farey fractions F_Q.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fordsph/gint.hpp"

namespace fordsph {

// Reduced fraction r/s with canonical denominator. Because the representation
// is unique, field equality is value equality.
struct GFraction {
  GInt r;
  CanonicalGInt s = CanonicalGInt::one();

  // Reduces by gcd(r, s) and moves the unit of s into r. DomainError if s = 0.
  static GFraction make(const GInt& r, const GInt& s);

  friend bool operator==(const GFraction&, const GFraction&) = default;
  // Deterministic order: (norm(s), re(s), im(s), re(r), im(r)).
  friend bool operator<(const GFraction& a, const GFraction& b);
};

std::string to_string(const GFraction& f);  // "r/s"

// Exact membership in the closed square: 0 <= Re, Im of r*conj(s) <= |s|^2.
bool in_i2(const GFraction& f);
bool on_i2_boundary(const GFraction& f);

// Center of a Ford sphere in exact rationals: the tangency point
// (re_num + i im_num) / den with den = |s|^2, radius 1 / radius_den where
// radius_den = 2|s|^2.
struct Sphere {
  std::int64_t re_num = 0;
  std::int64_t im_num = 0;
  std::int64_t den = 1;
  std::int64_t radius_den = 2;
};

Sphere sphere_of(const GFraction& f);

// |r's - rs'| = 1.
bool is_adjacent(const GFraction& a, const GFraction& b);

// Squared distance between sphere centers equals the squared radius sum,
// evaluated in exact integers. DomainError if a == b.
bool spheres_tangent(const GFraction& a, const GFraction& b);

// The reduced fractions of I2 with canonical denominator |s| <= S, sorted.
std::vector<GFraction> enumerate_gs(std::int64_t S);

// Children (r + u r') / (s + u s') for the four units that lie in I2, with
// zero denominators dropped. When a child leaves I2 across an edge on which
// both parents lie, its mirror image across that edge is used instead.
// Sorted and deduplicated. DomainError if the parents are not adjacent.
std::vector<GFraction> mediant_children(const GFraction& a, const GFraction& b);

// Closure of {0, 1, i, 1+i} under mediant_children, keeping denominators
// with |s| <= S. Sorted.
std::vector<GFraction> generate_gs_by_mediants(std::int64_t S);

// Adjacent, and some mediant denominator s + u s' has modulus > S.
bool is_consecutive(const GFraction& a, const GFraction& b, std::int64_t S);

// |s|, |s'| <= S, (s, s') = 1, and |s' + u s| > S for some unit u.
bool consecutive_denominator_conditions(const CanonicalGInt& s, const CanonicalGInt& s2, std::int64_t S);

using FractionPair = std::pair<GFraction, GFraction>;

// All consecutive pairs (r/s, r'/s') in G_S with the given denominators,
// found by solving r s' - r' s = u for each unit u and translating both
// numerators by a common Gaussian integer into I2. Unordered pairs are
// reported once; the first member carries denominator s. DomainError when
// the denominator conditions fail.
std::vector<FractionPair> consecutive_pairs_for_denoms(const CanonicalGInt& s, const CanonicalGInt& s2,
                                                       std::int64_t S);

// Both fractions lie on one common edge of I2.
bool is_boundary_pair(const FractionPair& pair);

struct RealFrac {
  std::int64_t p = 0;
  std::int64_t q = 1;

  friend bool operator==(const RealFrac&, const RealFrac&) = default;
};

// F_Q in increasing order.
std::vector<RealFrac> enumerate_fq(std::int64_t Q);

// a/b < c/d consecutive in F_Q: bc - ad = 1 and b + d > Q.
bool is_consecutive_fq(const RealFrac& a, const RealFrac& b, std::int64_t Q);

}  // namespace fordsph
