/* Copyright 2026 The wjit Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <functional>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "wjit/fq.hpp"
#include "wjit/galois_ring.hpp"
#include "wjit/trunc_ring.hpp"
#include "wjit/witt.hpp"

namespace wjit {
namespace {

using FqWitt = WittRing<FqContext>;
using FqWittVec = WittVec<FqContext>;

IntPoly ipoly(std::string_view text, std::size_t level) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i <= level; ++i) names.push_back("x" + std::to_string(i));
  for (std::size_t i = 0; i <= level; ++i) names.push_back("y" + std::to_string(i));
  return parse_poly(IntegerRing::instance(), text, names);
}

// All vectors of W_len(F_q), coordinate 0 varying fastest.
std::vector<FqWittVec> all_vectors(const FqWitt& w) {
  const std::uint64_t q = w.base()->order();
  const std::uint64_t size = checked_pow(q, w.length());
  std::vector<FqWittVec> out;
  for (std::uint64_t code = 0; code < size; ++code) {
    auto v = w.zero();
    std::uint64_t c = code;
    for (unsigned i = 0; i < w.length(); ++i, c /= q) v.coords[i] = FqElem{c % q};
    out.push_back(v);
  }
  return out;
}

FqWittVec vec(const FqWitt& w, std::vector<std::uint64_t> codes) {
  std::vector<FqElem> cs;
  for (auto c : codes) cs.push_back(FqElem{c});
  return w.from_coords(cs);
}

TEST(UniversalPolys, LevelZero) {
  for (std::uint64_t p : {2u, 3u, 5u}) {
    auto u = universal_witt_polys(p, 0);
    EXPECT_EQ(u->sum, ipoly("x0 + y0", 0));
    EXPECT_EQ(u->product, ipoly("x0*y0", 0));
  }
}

TEST(UniversalPolys, LevelOneProduct) {
  EXPECT_EQ(universal_witt_polys(2, 1)->product, ipoly("x0^2*y1 + x1*y0^2 + 2*x1*y1", 1));
  EXPECT_EQ(universal_witt_polys(3, 1)->product, ipoly("x0^3*y1 + x1*y0^3 + 3*x1*y1", 1));
  EXPECT_EQ(universal_witt_polys(5, 1)->product, ipoly("x0^5*y1 + x1*y0^5 + 5*x1*y1", 1));
}

TEST(UniversalPolys, LevelOneSum) {
  EXPECT_EQ(universal_witt_polys(2, 1)->sum, ipoly("x1 + y1 - x0*y0", 1));
  // S_1 = x_1 + y_1 - sum_{0<i<p} binom(p,i)/p x_0^i y_0^(p-i).
  for (std::uint64_t p : {3u, 5u, 7u}) {
    const auto zz = IntegerRing::instance();
    IntPoly expect = ipoly("x1 + y1", 1);
    for (std::uint64_t i = 1; i < p; ++i)
      expect = expect - IntPoly::monomial(zz, ExponentVec{i, 0, p - i, 0}, binomial(p, i) / static_cast<unsigned long>(p));
    EXPECT_EQ(universal_witt_polys(p, 1)->sum, expect);
  }
}

// w_n(S_0, ..., S_n) = w_n(x) + w_n(y), and likewise for P.
TEST(UniversalPolys, GhostIdentities) {
  for (auto [p, top] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 4}, {3, 3}, {5, 2}}) {
    for (unsigned n = 0; n <= top; ++n) {
      const std::size_t arity = 2 * (n + 1);
      std::vector<IntPoly> s, m;
      for (unsigned j = 0; j <= n; ++j) {
        auto u = universal_witt_polys(p, j);
        std::vector<std::size_t> map;
        for (unsigned k = 0; k <= j; ++k) map.push_back(k);
        for (unsigned k = 0; k <= j; ++k) map.push_back(n + 1 + k);
        s.push_back(remap_variables(u->sum, arity, map));
        m.push_back(remap_variables(u->product, arity, map));
      }
      const IntPoly w = ghost_polynomial(p, n, n + 1, 0);
      const IntPoly wx = ghost_polynomial(p, n, arity, 0), wy = ghost_polynomial(p, n, arity, n + 1);
      EXPECT_EQ(compose<IntegerRing>(w, s), wx + wy) << "p=" << p << " n=" << n;
      EXPECT_EQ(compose<IntegerRing>(w, m), wx * wy) << "p=" << p << " n=" << n;
    }
  }
}

TEST(UniversalPolys, LevelCap) {
  EXPECT_THROW(universal_witt_polys(2, 5), CapExceeded);
  EXPECT_NO_THROW(universal_witt_polys(2, 2, 2));
  EXPECT_THROW(universal_witt_polys(4, 1), DomainError);
}

TEST(WittArith, Examples) {
  auto w2 = FqWitt::create(FqContext::create(2, 1), 2, 2);
  EXPECT_TRUE(w2->equal(w2->add(vec(*w2, {1, 0}), vec(*w2, {1, 0})), vec(*w2, {0, 1})));
  for (const auto& a : all_vectors(*w2)) EXPECT_TRUE(w2->equal(w2->add(a, w2->zero()), a));

  auto f3 = FqContext::create(3, 1);
  auto w3 = FqWitt::create(f3, 3, 2);
  const auto one = w3->teichmuller(f3->one());
  const auto three = w3->add(w3->add(one, one), one);
  EXPECT_TRUE(f3->is_zero(three.coords[0]));
  EXPECT_FALSE(f3->is_zero(three.coords[1]));
  EXPECT_TRUE(w3->equal(three, w3->from_int(3)));
  EXPECT_TRUE(w3->is_zero(w3->from_int(9)));

  auto w3_len3 = FqWitt::create(f3, 3, 3);
  EXPECT_THROW(w3->add(one, w3_len3->one()), MismatchError);
}

TEST(WittArith, RingLawsExhaustive) {
  for (auto [p, t, len] : std::vector<std::tuple<std::uint64_t, unsigned, unsigned>>{
           {2, 1, 2}, {2, 1, 3}, {2, 1, 4}, {2, 2, 2}, {2, 2, 3}, {3, 1, 2}, {3, 1, 3}, {3, 2, 2}, {2, 3, 2}, {5, 1, 2}, {7, 1, 2}}) {
    auto w = FqWitt::create(FqContext::create(p, t), p, len);
    const auto els = all_vectors(*w);
    const bool triples = els.size() <= 64;
    for (const auto& a : els) {
      ASSERT_TRUE(w->equal(w->mul(a, w->one()), a));
      ASSERT_TRUE(w->is_zero(w->add(a, w->neg(a))));
      for (const auto& b : els) {
        ASSERT_TRUE(w->equal(w->add(a, b), w->add(b, a)));
        ASSERT_TRUE(w->equal(w->mul(a, b), w->mul(b, a)));
        if (!triples) continue;
        for (const auto& c : els) {
          ASSERT_TRUE(w->equal(w->mul(w->mul(a, b), c), w->mul(a, w->mul(b, c))));
          ASSERT_TRUE(w->equal(w->add(w->add(a, b), c), w->add(a, w->add(b, c))));
          ASSERT_TRUE(w->equal(w->mul(a, w->add(b, c)), w->add(w->mul(a, b), w->mul(a, c))));
        }
      }
    }
  }
}

TEST(WittArith, RingLawsRandomLarger) {
  std::mt19937_64 rng(1);
  for (auto [p, t, len] : std::vector<std::tuple<std::uint64_t, unsigned, unsigned>>{{2, 2, 4}, {3, 2, 3}, {3, 1, 4}, {2, 3, 3}}) {
    auto w = FqWitt::create(FqContext::create(p, t), p, len);
    std::uniform_int_distribution<std::uint64_t> pick(0, w->base()->order() - 1);
    auto rnd = [&] {
      auto v = w->zero();
      for (auto& c : v.coords) c = FqElem{pick(rng)};
      return v;
    };
    for (int i = 0; i < 300; ++i) {
      const auto a = rnd(), b = rnd(), c = rnd();
      ASSERT_TRUE(w->equal(w->mul(w->mul(a, b), c), w->mul(a, w->mul(b, c))));
      ASSERT_TRUE(w->equal(w->mul(a, w->add(b, c)), w->add(w->mul(a, b), w->mul(a, c))));
      ASSERT_TRUE(w->equal(w->sub(w->add(a, b), b), a));
    }
  }
}

// Two independent realizations of the same arithmetic must coincide.
TEST(WittArith, GhostLiftMatchesUniversal) {
  for (auto [p, t, len] : std::vector<std::tuple<std::uint64_t, unsigned, unsigned>>{
           {2, 1, 5}, {2, 2, 3}, {3, 1, 4}, {3, 2, 2}, {5, 1, 3}, {2, 3, 2}}) {
    auto f = FqContext::create(p, t);
    auto uni = FqWitt::create(f, p, len, WittBackend::universal);
    auto gho = FqWitt::create(f, p, len, WittBackend::ghost_lift);
    EXPECT_FALSE(uni->uses_ghost_lift());
    EXPECT_TRUE(gho->uses_ghost_lift());
    const auto els = all_vectors(*uni);
    std::mt19937_64 rng(p * 100 + t * 10 + len);
    std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
    const bool exhaustive = els.size() <= 256;
    const std::size_t pairs = exhaustive ? els.size() * els.size() : 20000;
    for (std::size_t k = 0; k < pairs; ++k) {
      const auto& a = exhaustive ? els[k / els.size()] : els[pick(rng)];
      const auto& b = exhaustive ? els[k % els.size()] : els[pick(rng)];
      ASSERT_TRUE(uni->equal(uni->add(a, b), gho->add(a, b)));
      ASSERT_TRUE(uni->equal(uni->mul(a, b), gho->mul(a, b)));
      if (k % els.size() == 0) ASSERT_TRUE(uni->equal(uni->neg(a), gho->neg(a)));
    }
  }
}

TEST(WittArith, AutomaticBackendAboveCap) {
  auto w = FqWitt::create(FqContext::create(2, 1), 2, 7);
  EXPECT_TRUE(w->uses_ghost_lift());
  EXPECT_TRUE(w->equal(w->from_int(128), w->zero()));
  EXPECT_FALSE(w->is_zero(w->from_int(64)));
  EXPECT_THROW(WittRing<TruncPolyRing>::create(TruncPolyRing::create(2, 2), 2, 7), CapExceeded);
}

TEST(WittStructure, Examples) {
  auto f2 = FqContext::create(2, 1);
  auto w2 = FqWitt::create(f2, 2, 2);
  auto w3 = FqWitt::create(f2, 2, 3);
  const auto v = verschiebung_extend(*w3, vec(*w2, {1, 1}));
  EXPECT_TRUE(w3->equal(v, vec(*w3, {0, 1, 1})));
  EXPECT_TRUE(w2->equal(restrict_witt(*w2, v), vec(*w2, {0, 1})));
  EXPECT_TRUE(w2->equal(w2->verschiebung(w2->frobenius(w2->one())), vec(*w2, {0, 1})));
  EXPECT_TRUE(w2->equal(w2->from_int(2), vec(*w2, {0, 1})));

  auto f4 = FqContext::create(2, 2);
  auto w = FqWitt::create(f4, 2, 2);
  for (std::uint64_t a = 0; a < 4; ++a)
    for (std::uint64_t b = 0; b < 4; ++b)
      EXPECT_TRUE(w->equal(w->teichmuller(f4->mul(FqElem{a}, FqElem{b})),
                           w->mul(w->teichmuller(FqElem{a}), w->teichmuller(FqElem{b}))));

  auto wz9 = WittRing<GrContext>::create(GrContext::create(FqContext::create(3, 1), 2), 3, 2);
  EXPECT_THROW(wz9->frobenius(wz9->one()), DomainError);
}

// VFrob = FrobV = p, a V(b) = V(Frob(a) b), [ab] = [a][b].
TEST(WittStructure, IdentitiesExhaustive) {
  for (auto [p, t, len] : std::vector<std::tuple<std::uint64_t, unsigned, unsigned>>{
           {2, 1, 3}, {2, 1, 4}, {2, 2, 2}, {2, 2, 3}, {3, 1, 2}, {3, 1, 3}, {3, 2, 2}, {5, 1, 2}}) {
    auto w = FqWitt::create(FqContext::create(p, t), p, len);
    const auto pw = w->from_int(static_cast<std::int64_t>(p));
    const auto els = all_vectors(*w);
    for (const auto& a : els) {
      const auto pa = w->mul(pw, a);
      ASSERT_TRUE(w->equal(w->verschiebung(w->frobenius(a)), pa));
      ASSERT_TRUE(w->equal(w->frobenius(w->verschiebung(a)), pa));
      for (const auto& b : els)
        ASSERT_TRUE(w->equal(w->mul(a, w->verschiebung(b)), w->verschiebung(w->mul(w->frobenius(a), b))));
    }
    const auto& f = *w->base();
    for (std::uint64_t x = 0; x < f.order(); ++x)
      for (std::uint64_t y = 0; y < f.order(); ++y)
        ASSERT_TRUE(w->equal(w->teichmuller(f.mul(FqElem{x}, FqElem{y})),
                             w->mul(w->teichmuller(FqElem{x}), w->teichmuller(FqElem{y}))));
  }
}

// a - b in V W implies a^(p^l) - b^(p^l) in V^(l+1) W.
TEST(WittStructure, PthPoweringLemma) {
  for (auto [t, l] : std::vector<std::pair<unsigned, unsigned>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
    auto w = FqWitt::create(FqContext::create(2, t), 2, l + 2);
    const auto els = all_vectors(*w);
    const std::uint64_t e = checked_pow(2, l);
    for (const auto& a : els)
      for (const auto& b : els) {
        if (!(a.coords[0] == b.coords[0])) continue;
        const auto d = w->sub(ring_pow(*w, a, e), ring_pow(*w, b, e));
        for (unsigned i = 0; i <= l; ++i) ASSERT_TRUE(w->base()->is_zero(d.coords[i]));
      }
  }
}

// [f] = sum over |i| = p^l of p^(v-l) binom(p^l; i) V^(l-v) [prod_k (c_k u^a_k)^(i_k/p^v)]
// with v = v_p(i), in W_{l+1}(F_p[u]/(u^k)).
TEST(WittStructure, ExpandingTeichmuller) {
  for (auto [p, k, l] : std::vector<std::tuple<std::uint64_t, unsigned, unsigned>>{{2, 3, 1}, {2, 3, 2}, {3, 2, 1}, {2, 4, 1}}) {
    auto a = TruncPolyRing::create(p, k);
    auto w = WittRing<TruncPolyRing>::create(a, p, l + 1);
    const std::uint64_t pl = checked_pow(p, l);
    // Monomials c u^e with c in F_p^*, e < k.
    std::vector<TruncPolyRing::Elem> monos;
    for (std::uint64_t c = 1; c < p; ++c)
      for (unsigned e = 0; e < k; ++e) monos.push_back(a->mul(a->from_int(static_cast<std::int64_t>(c)), ring_pow(*a, a->u(), e)));
    for (std::size_t s = 1; s <= 2; ++s) {
      std::vector<std::size_t> pick(s, 0);
      std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos < s) {
          for (std::size_t m = 0; m < monos.size(); ++m) pick[pos] = m, rec(pos + 1);
          return;
        }
        auto f = a->zero();
        for (auto m : pick) f = a->add(f, monos[m]);
        auto rhs = w->zero();
        std::vector<std::uint64_t> idx(s);
        std::function<void(std::size_t, std::uint64_t)> comp = [&](std::size_t pos2, std::uint64_t left) {
          if (pos2 + 1 == s) {
            idx[pos2] = left;
            const std::uint32_t v = exp_vp(ExponentVec(idx.begin(), idx.end()), p);
            const std::uint64_t pv = checked_pow(p, v);
            auto inner = a->one();
            for (std::size_t q = 0; q < s; ++q) inner = a->mul(inner, ring_pow(*a, monos[pick[q]], idx[q] / pv));
            auto term = w->teichmuller(inner);
            for (unsigned r = 0; r < l - v; ++r) term = w->verschiebung(term);
            const mpz_class coeff = multinomial(idx) / mpz_class(std::to_string(checked_pow(p, l - v)));
            rhs = w->add(rhs, w->mul(w->from_bigint(coeff), term));
            return;
          }
          for (std::uint64_t x = 0; x <= left; ++x) idx[pos2] = x, comp(pos2 + 1, left - x);
        };
        comp(0, pl);
        ASSERT_TRUE(w->equal(w->teichmuller(f), rhs)) << "f=" << a->format(f);
      };
      rec(0);
    }
  }
}

TEST(WittStructure, MultinomialDivisibility) {
  for (std::uint64_t p : {2u, 3u}) {
    for (unsigned l = 1; l <= 3; ++l) {
      const std::uint64_t total = checked_pow(p, l);
      for (std::size_t s = 1; s <= 3; ++s) {
        std::vector<std::uint64_t> alpha(s);
        std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t pos, std::uint64_t left) {
          if (pos + 1 == s) {
            alpha[pos] = left;
            const std::uint32_t v = exp_vp(ExponentVec(alpha.begin(), alpha.end()), p);
            const mpz_class m = multinomial(alpha);
            const mpz_class d(std::to_string(checked_pow(p, l - v)));
            ASSERT_TRUE(mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t()));
            return;
          }
          for (std::uint64_t x = 0; x <= left; ++x) alpha[pos] = x, rec(pos + 1, left - x);
        };
        rec(0, total);
      }
    }
  }
}

TEST(WittToGalois, Examples) {
  auto f2 = FqContext::create(2, 1);
  auto w2 = FqWitt::create(f2, 2, 2);
  auto z4 = GrContext::create(f2, 2);
  EXPECT_EQ(witt_to_galois(*w2, w2->one(), *z4), z4->one());
  EXPECT_EQ(witt_to_galois(*w2, w2->zero(), *z4), z4->zero());
  EXPECT_EQ(witt_to_galois(*w2, vec(*w2, {0, 1}), *z4), z4->from_int(2));
  EXPECT_EQ(witt_to_galois(*w2, vec(*w2, {1, 1}), *z4), z4->from_int(3));

  auto f3 = FqContext::create(3, 1);
  auto w3 = FqWitt::create(f3, 3, 2);
  auto z9 = GrContext::create(f3, 2);
  EXPECT_EQ(witt_to_galois(*w3, vec(*w3, {2, 0}), *z9), z9->from_int(8));
  EXPECT_THROW(witt_to_galois(*w3, vec(*w3, {2, 0}), *GrContext::create(f3, 3)), MismatchError);
}

TEST(WittToGalois, IsomorphismExhaustiveSmall) {
  for (auto [p, t, len] : std::vector<std::tuple<std::uint64_t, unsigned, unsigned>>{
           {2, 1, 2}, {2, 1, 3}, {2, 1, 6}, {2, 2, 2}, {2, 2, 3}, {3, 1, 2}, {3, 1, 4}, {3, 2, 2}, {2, 3, 2}, {5, 1, 2}}) {
    auto f = FqContext::create(p, t);
    auto w = FqWitt::create(f, p, len);
    auto g = GrContext::create(f, len);
    const auto els = all_vectors(*w);
    std::vector<GrElem> image;
    std::set<std::vector<std::uint64_t>> seen;
    for (const auto& a : els) {
      image.push_back(witt_to_galois(*w, a, *g));
      seen.insert({image.back().c.begin(), image.back().c.end()});
      ASSERT_TRUE(w->equal(galois_to_witt(*w, image.back(), *g), a));
    }
    ASSERT_EQ(seen.size(), els.size());
    ASSERT_EQ(witt_to_galois(*w, w->one(), *g), g->one());
    for (std::size_t i = 0; i < els.size(); ++i)
      for (std::size_t j = 0; j < els.size(); ++j) {
        ASSERT_EQ(witt_to_galois(*w, w->add(els[i], els[j]), *g), g->add(image[i], image[j]));
        ASSERT_EQ(witt_to_galois(*w, w->mul(els[i], els[j]), *g), g->mul(image[i], image[j]));
      }
  }
}

TEST(WittTrunc, RingLawsOverNonReducedRing) {
  std::mt19937_64 rng(2);
  for (auto [p, k, len] : std::vector<std::tuple<std::uint64_t, unsigned, unsigned>>{{2, 3, 2}, {2, 3, 3}, {3, 2, 2}}) {
    auto a = TruncPolyRing::create(p, k);
    auto w = WittRing<TruncPolyRing>::create(a, p, len);
    std::uniform_int_distribution<std::uint64_t> pick(0, a->size() - 1);
    auto rnd = [&] {
      auto v = w->zero();
      for (auto& c : v.coords) c = a->element_at(pick(rng));
      return v;
    };
    for (int i = 0; i < 500; ++i) {
      const auto x = rnd(), y = rnd(), z = rnd();
      ASSERT_TRUE(w->equal(w->mul(w->mul(x, y), z), w->mul(x, w->mul(y, z))));
      ASSERT_TRUE(w->equal(w->mul(x, w->add(y, z)), w->add(w->mul(x, y), w->mul(x, z))));
      ASSERT_TRUE(w->is_zero(w->add(x, w->neg(x))));
      ASSERT_TRUE(w->equal(w->verschiebung(w->frobenius(x)), w->mul(w->from_int(static_cast<std::int64_t>(p)), x)));
    }
  }
}

TEST(WittFormat, RoundTrip) {
  auto f4 = FqContext::create(2, 2);
  auto w = FqWitt::create(f4, 2, 3);
  for (const auto& a : all_vectors(*w)) {
    ASSERT_TRUE(w->equal(w->parse(w->format(a)), a));
    ASSERT_TRUE(w->equal(w->from_json(w->to_json(a)), a));
  }
  EXPECT_EQ(w->format(vec(*w, {2, 0, 3})), "([0,1],[0,0],[1,1])");
  EXPECT_THROW(w->parse("([0,1],[0,0]"), ParseError);
  EXPECT_THROW(w->parse("([0,1])"), MismatchError);
}

}  // namespace
}  // namespace wjit
