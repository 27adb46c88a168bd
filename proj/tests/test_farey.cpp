#include "doctest_main.hpp"

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "fordsph/farey.hpp"

using namespace fordsph;

namespace {

GFraction frac(GInt r, GInt s) { return GFraction::make(r, s); }

// G_S by a wide box scan over every (r, s) with s in any quadrant, keeping
// values in the square by cross-multiplication. Independent of the
// canonical-denominator bounding box used by enumerate_gs.
std::set<GFraction> gs_brute(std::int64_t S) {
  std::set<GFraction> out;
  for (std::int64_t a = -S; a <= S; ++a)
    for (std::int64_t b = -S; b <= S; ++b) {
      const GInt s{a, b};
      if (s.is_zero() || norm(s) > S * S) continue;
      const std::int64_t reach = 2 * S;
      for (std::int64_t x = -reach; x <= reach; ++x)
        for (std::int64_t y = -reach; y <= reach; ++y) {
          const GInt r{x, y};
          const GInt c = r * conj(s);
          const std::int64_t n = norm(s);
          if (c.re < 0 || c.re > n || c.im < 0 || c.im > n) continue;
          if (!is_coprime(r, s)) continue;
          out.insert(GFraction::make(r, s));
        }
    }
  return out;
}

}  // namespace

TEST_CASE("GFraction::make reduces and canonicalizes") {
  const GFraction f = frac(GInt{1, 1}, GInt{2});
  CHECK(f.r == GInt{0, 1});
  CHECK(f.s.value() == GInt{1, 1});
  CHECK(frac(GInt{0, 1}, GInt{0, 1}) == frac(GInt{1}, GInt{1}));
  CHECK(frac(GInt{0}, GInt{5, 3}) == frac(GInt{0}, GInt{1}));
  CHECK_THROWS_AS(frac(GInt{1}, GInt{0}), DomainError);
  CHECK(to_string(f) == "0+1i/1+1i");
}

TEST_CASE("enumerate_gs examples") {
  const auto g1 = enumerate_gs(1);
  CHECK(std::set<GFraction>(g1.begin(), g1.end()) ==
        std::set<GFraction>{frac(GInt{0}, GInt{1}), frac(GInt{1}, GInt{1}), frac(GInt{0, 1}, GInt{1}),
                            frac(GInt{1, 1}, GInt{1})});

  const auto g2 = enumerate_gs(2);
  const std::set<GFraction> expected2{frac(GInt{0}, GInt{1}),     frac(GInt{1}, GInt{1}),
                                      frac(GInt{0, 1}, GInt{1}),  frac(GInt{1, 1}, GInt{1}),
                                      frac(GInt{0, 1}, GInt{1, 1}), frac(GInt{1}, GInt{2}),
                                      frac(GInt{0, 1}, GInt{2}),  frac(GInt{2, 1}, GInt{2}),
                                      frac(GInt{1, 2}, GInt{2})};
  CHECK(g2.size() == 9);
  CHECK(std::set<GFraction>(g2.begin(), g2.end()) == expected2);

  for (std::int64_t S = 1; S <= 6; ++S) {
    const auto gs = enumerate_gs(S);
    for (const GFraction& f : gs) {
      REQUIRE(in_i2(f));
      REQUIRE(is_coprime(f.r, f.s));
      REQUIRE(f.s.norm() <= S * S);
    }
    REQUIRE(std::is_sorted(gs.begin(), gs.end()));
    REQUIRE(std::set<GFraction>(gs.begin(), gs.end()) == gs_brute(S));
  }
}

TEST_CASE("spheres") {
  const Sphere sp = sphere_of(frac(GInt{0, 1}, GInt{1, 1}));
  CHECK(sp.re_num == 1);
  CHECK(sp.im_num == 1);
  CHECK(sp.den == 2);
  CHECK(sp.radius_den == 4);  // radius 1/(2|s|^2) = 1/4
}

TEST_CASE("is_adjacent examples") {
  CHECK(is_adjacent(frac(GInt{0}, GInt{1}), frac(GInt{0, 1}, GInt{1, 1})));
  CHECK_FALSE(is_adjacent(frac(GInt{1}, GInt{2}), frac(GInt{0, 1}, GInt{2})));
  const GFraction f = frac(GInt{2, 1}, GInt{2});
  CHECK_FALSE(is_adjacent(f, f));
}

TEST_CASE("spheres_tangent examples and agreement with adjacency on G_4") {
  CHECK(spheres_tangent(frac(GInt{0}, GInt{1}), frac(GInt{0, 1}, GInt{1, 1})));
  CHECK_FALSE(spheres_tangent(frac(GInt{0}, GInt{1}), frac(GInt{1, 1}, GInt{1})));
  CHECK_THROWS_AS(spheres_tangent(frac(GInt{0}, GInt{1}), frac(GInt{0}, GInt{1})), DomainError);

  const auto g4 = enumerate_gs(4);
  int tangent = 0;
  for (std::size_t i = 0; i < g4.size(); ++i)
    for (std::size_t j = i + 1; j < g4.size(); ++j) {
      const bool t = spheres_tangent(g4[i], g4[j]);
      REQUIRE(t == is_adjacent(g4[i], g4[j]));
      tangent += t;
    }
  CHECK(tangent > 0);
}

TEST_CASE("mediant_children examples") {
  const GFraction zero = frac(GInt{0}, GInt{1}), one = frac(GInt{1}, GInt{1}), i = frac(GInt{0, 1}, GInt{1});
  const auto c = mediant_children(zero, one);
  const std::set<GFraction> cs(c.begin(), c.end());
  CHECK(cs.count(frac(GInt{1}, GInt{2})) == 1);
  CHECK(cs.count(frac(GInt{1, 1}, GInt{2})) == 1);
  CHECK(cs.size() == 2);
  // The u = -i child (1-i)/2 lies below the square; its mirror is (1+i)/2.
  CHECK_FALSE(in_i2(frac(GInt{0, -1}, GInt{1, -1})));

  const auto d = mediant_children(zero, i);
  const std::set<GFraction> ds(d.begin(), d.end());
  CHECK(ds.count(frac(GInt{0, 1}, GInt{2})) == 1);
  CHECK(ds.count(frac(GInt{1, 1}, GInt{2})) == 1);

  CHECK_THROWS_AS(mediant_children(frac(GInt{1}, GInt{2}), frac(GInt{0, 1}, GInt{2})), DomainError);
}

TEST_CASE("mediant children are adjacent to both parents") {
  const auto g = enumerate_gs(6);
  int pairs = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!is_adjacent(g[i], g[j])) continue;
      for (const GFraction& child : mediant_children(g[i], g[j])) {
        REQUIRE(in_i2(child));
        REQUIRE(is_adjacent(child, g[i]));
        REQUIRE(is_adjacent(child, g[j]));
      }
      ++pairs;
    }
  CHECK(pairs > 100);
}

TEST_CASE("mediant closure reproduces G_S for S <= 10") {
  CHECK(generate_gs_by_mediants(1) == enumerate_gs(1));
  CHECK(generate_gs_by_mediants(2).size() == 9);
  for (std::int64_t S = 1; S <= 10; ++S) REQUIRE(generate_gs_by_mediants(S) == enumerate_gs(S));
}

TEST_CASE("is_consecutive examples") {
  const GFraction zero = frac(GInt{0}, GInt{1}), half = frac(GInt{0, 1}, GInt{1, 1});
  CHECK(is_consecutive(zero, half, 2));
  CHECK_FALSE(is_consecutive(zero, half, 3));
  CHECK(is_consecutive(zero, frac(GInt{1}, GInt{1}), 1));
  CHECK_FALSE(is_consecutive(frac(GInt{1}, GInt{2}), frac(GInt{0, 1}, GInt{2}), 5));
}

TEST_CASE("consecutive_denominator_conditions examples") {
  const auto one = CanonicalGInt::one();
  const auto w = CanonicalGInt::from(GInt{1, 1});
  const auto two = CanonicalGInt::from(GInt{2});
  CHECK(consecutive_denominator_conditions(one, w, 2));
  CHECK_FALSE(consecutive_denominator_conditions(one, w, 3));
  for (std::int64_t S = 1; S <= 6; ++S) CHECK_FALSE(consecutive_denominator_conditions(two, w, S));
  CHECK_FALSE(consecutive_denominator_conditions(one, CanonicalGInt::from(GInt{3}), 2));  // |3| > 2
}

TEST_CASE("consecutive_pairs_for_denoms at S = 1") {
  const auto one = CanonicalGInt::one();
  const auto pairs = consecutive_pairs_for_denoms(one, one, 1);
  REQUIRE(pairs.size() == 4);
  std::set<std::set<GFraction>> got;
  for (const auto& [a, b] : pairs) {
    CHECK(is_consecutive(a, b, 1));
    got.insert({a, b});
  }
  const GFraction z = frac(GInt{0}, GInt{1}), o = frac(GInt{1}, GInt{1}), i = frac(GInt{0, 1}, GInt{1}),
                  oi = frac(GInt{1, 1}, GInt{1});
  CHECK(got == std::set<std::set<GFraction>>{{z, o}, {z, i}, {o, oi}, {i, oi}});
  CHECK_THROWS_AS(consecutive_pairs_for_denoms(one, one, 2), DomainError);
}

// Exhaustive scan of G_S: denominator pairs realized by consecutive fraction
// pairs, with the number of fraction pairs per unordered denominator pair.
TEST_CASE("denominator classification matches geometric consecutivity (S <= 6)") {
  for (std::int64_t S = 1; S <= 6; ++S) {
    const auto g = enumerate_gs(S);
    std::map<std::pair<CanonicalGInt, CanonicalGInt>, int> realized;
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j)
        if (is_consecutive(g[i], g[j], S)) {
          auto key = std::minmax(g[i].s, g[j].s);
          ++realized[{key.first, key.second}];
        }
    std::set<std::pair<CanonicalGInt, CanonicalGInt>> qualifying;
    std::vector<CanonicalGInt> dens;
    for (std::int64_t a = 1; a <= S; ++a)
      for (std::int64_t b = 0; a * a + b * b <= S * S; ++b) dens.push_back(CanonicalGInt::from(GInt{a, b}));
    for (const auto& s : dens)
      for (const auto& t : dens)
        if (!(t < s) && consecutive_denominator_conditions(s, t, S)) qualifying.insert({s, t});

    std::set<std::pair<CanonicalGInt, CanonicalGInt>> realized_keys;
    for (const auto& [k, v] : realized) realized_keys.insert(k);
    REQUIRE(realized_keys == qualifying);

    for (const auto& [key, count] : realized) {
      const auto pairs = consecutive_pairs_for_denoms(key.first, key.second, S);
      REQUIRE(static_cast<int>(pairs.size()) == count);
      const bool degenerate = std::any_of(pairs.begin(), pairs.end(), is_boundary_pair);
      if (!degenerate) REQUIRE(count == 4);
      for (const auto& p : pairs) REQUIRE(is_consecutive(p.first, p.second, S));
    }
  }
}

TEST_CASE("real Farey reference") {
  const auto f3 = enumerate_fq(3);
  CHECK(f3 == std::vector<RealFrac>{{0, 1}, {1, 3}, {1, 2}, {2, 3}, {1, 1}});
  CHECK(is_consecutive_fq({1, 3}, {1, 2}, 3));
  CHECK_FALSE(is_consecutive_fq({0, 1}, {1, 2}, 3));

  for (std::int64_t Q = 1; Q <= 50; ++Q) {
    const auto f = enumerate_fq(Q);
    std::size_t expected = 1;  // 0/1 plus sum of Euler phi
    for (std::int64_t q = 1; q <= Q; ++q)
      for (std::int64_t p = 1; p <= q; ++p) expected += std::gcd(p, q) == 1;
    REQUIRE(f.size() == expected);
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j) REQUIRE(is_consecutive_fq(f[i], f[j], Q) == (j == i + 1));
  }
}
