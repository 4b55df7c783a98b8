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

#include <random>

#include <gtest/gtest.h>

#include "family.hpp"
#include "wjit/hitting.hpp"
#include "wjit/numtheory.hpp"
#include "wjit/oracle.hpp"

namespace wjit {
namespace {

FqPoly fq(const FqPtr& f, std::string_view text, std::size_t n) { return parse_poly(f, text, n); }

Circuit<FqContext> ycircuit(const FqPtr& f, std::string_view text, std::size_t m) {
  return Circuit<FqContext>::from_poly(parse_poly(f, text, default_variable_names(m, "y")));
}

TEST(HittingParams, Formulas) {
  const auto hp = HittingParams::create(2, 1, 1, 1, 1);
  EXPECT_EQ(hp.D, 2);
  EXPECT_EQ(hp.N, 4 * 128);          // 4 * 2^7
  EXPECT_EQ(hp.s2, 4 * 512);         // 4 * 2^9
  EXPECT_EQ(hp.s1, 2);
  EXPECT_FALSE(hp.heuristic());
  const auto big = HittingParams::create(3, 2, 2, 2, 5);
  EXPECT_EQ(big.D, 2 * 8 + 1);
  mpz_class expect;
  mpz_ui_pow_ui(expect.get_mpz_t(), 16, 56);
  EXPECT_EQ(big.N, 9 * expect);
  EXPECT_TRUE(HittingParams::create(2, 1, 1, 1, 1, {std::nullopt, 4, std::nullopt}).heuristic());
  EXPECT_FALSE(HittingParams::create(2, 1, 1, 1, 1, {std::nullopt, 5000, std::nullopt}).heuristic());
  // Overrides of absent parts do not count.
  EXPECT_FALSE(HittingParams::create(2, 2, 1, 1, 1, {std::nullopt, 4, 4}).heuristic());
  EXPECT_THROW(HittingParams::create(2, 0, 1, 1, 1), DomainError);
  EXPECT_THROW(HittingParams::create(1, 2, 1, 1, 1), DomainError);
  EXPECT_EQ(big.to_json()["mode"], "certified");
}

TEST(SubstitutionPoint, Examples) {
  auto f7 = FqContext::create(7, 1);
  for (auto v : substitution_point(*f7, f7->one(), 10, 5, 6)) EXPECT_EQ(v, f7->one());
  EXPECT_EQ(substitution_exponents(2, 3, 3), (std::vector<std::uint64_t>{1, 2, 1}));
  const auto z = substitution_point(*f7, f7->zero(), 3, 3, 3);
  EXPECT_EQ(z, (std::vector<FqElem>{f7->zero(), f7->one(), f7->one()}));
  const auto c = f7->from_int(3);
  EXPECT_EQ(substitution_point(*f7, c, 2, 5, 3), (std::vector<FqElem>{c, f7->pow(c, 2), f7->pow(c, 4)}));
  EXPECT_THROW(substitution_exponents(2, 1, 3), DomainError);
}

TEST(SubstitutionPoint, PeriodIsMultiplicativeOrder) {
  std::mt19937_64 rng(5);
  const auto primes = primes_up_to(200);
  std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
  std::uniform_int_distribution<std::uint64_t> dd(2, 1'000'000);
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint64_t q = primes[pick(rng)], D = dd(rng);
    if (D % q == 0) continue;
    const auto ord = multiplicative_order(D % q, q);
    const auto e = substitution_exponents(D, q, 3 * ord + 1);
    for (std::size_t i = 0; i + ord < e.size(); ++i) ASSERT_EQ(e[i], e[i + ord]);
    for (std::size_t k = 1; k < ord; ++k) ASSERT_NE(e[0], e[k]);
  }
}

TEST(PreserveNondegeneracy, Examples) {
  auto z4 = GrContext::create(FqContext::create(2, 1), 2);
  const std::vector<GrElem> ones{z4->one()};
  const auto g = parse_poly(z4, "x1*x2", 2);
  const auto trivial = preserve_nondegeneracy_search(g, 2, 1, ones, 2, 10);
  ASSERT_TRUE(trivial);
  EXPECT_FALSE(trivial->c);
  EXPECT_EQ(trivial->h, g);

  const auto a = preserve_nondegeneracy_search(g, 1, 1, ones, 2, 10);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->q, 2u);
  EXPECT_EQ(a->h, parse_poly(z4, "x1", 1));

  // x1 (x2 - x3) over Z/9 with c = -1 and D = 3: q = 2 sends x2, x3 to c and
  // cancels; q = 3 sends x3 to 1.
  auto z9 = GrContext::create(FqContext::create(3, 1), 2);
  const std::vector<GrElem> minus{z9->from_int(-1)};
  const auto collide = parse_poly(z9, "x1*x2 - x1*x3", 3);
  const auto b = preserve_nondegeneracy_search(collide, 1, 1, minus, 3, 10);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->q, 3u);
  EXPECT_EQ(b->h, parse_poly(z9, "-2*x1", 1));
  // The exponent-reduction picture: x2 - x3 under t^(3^i) has exponents 1, 3.
  const auto uni = parse_poly(z9, "x1 - x1^3", 1);
  EXPECT_TRUE(reduce_exponents_mod(uni, 2).is_zero());
  EXPECT_FALSE(reduce_exponents_mod(uni, 3).is_zero());

  EXPECT_THROW(preserve_nondegeneracy_search(GrPoly(z4, 2), 1, 1, ones, 2, 10), DomainError);
  const std::vector<GrElem> nonunit{z4->from_int(2)};
  EXPECT_THROW(preserve_nondegeneracy_search(g, 1, 1, nonunit, 2, 10), DomainError);
  EXPECT_FALSE(preserve_nondegeneracy_search(collide, 1, 1, minus, 3, 2));
}

TEST(PreserveNondegeneracy, ResultIsNondegenerate) {
  std::mt19937_64 rng(8);
  auto f9 = FqContext::create(3, 2);
  auto g = GrContext::create(f9, 2);
  std::vector<GrElem> S;
  for (std::uint64_t k = 1; k <= 8; ++k) S.push_back(g->teichmuller(f9->element_at(k)));
  std::uniform_int_distribution<Exponent> ex(0, 3);
  std::uniform_int_distribution<std::int64_t> co(0, 8);
  int found = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<GrPoly::Term> ts;
    for (int k = 0; k < 4; ++k) ts.push_back({ExponentVec{ex(rng), ex(rng), ex(rng)}, g->from_int(co(rng))});
    const auto f = GrPoly::from_terms(g, 3, ts);
    if (is_degenerate(f, 1)) continue;
    const auto res = preserve_nondegeneracy_search(f, 1 + trial % 2, 1, S, 4, 30);
    if (!res) continue;
    ++found;
    ASSERT_FALSE(is_degenerate(res->h, 1));
    ASSERT_EQ(res->h.arity(), 1u + trial % 2);
  }
  EXPECT_GT(found, 50);
}

TEST(VariableReduction, Examples) {
  auto f3 = FqContext::create(3, 1);
  const std::vector<FqElem> ones{f3->one()};
  const std::vector<FqPoly> full{fq(f3, "x1", 2), fq(f3, "x2", 2)};
  const auto id = variable_reduction_search(full, ones, 5, 10);
  ASSERT_TRUE(id);
  EXPECT_FALSE(id->c);
  EXPECT_EQ(id->reduced, full);

  const std::vector<FqPoly> prod{fq(f3, "x1*x3", 3)};
  const auto a = variable_reduction_search(prod, ones, 2, 10);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->reduced[0], fq(f3, "x1", 1));
  EXPECT_TRUE(independence_oracle(a->reduced).verdict.independent);

  const std::vector<FqPoly> sum{fq(f3, "x1 + x2", 2)};
  const auto b = variable_reduction_search(sum, ones, 2, 10);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->reduced[0], fq(f3, "x1 + 1", 1));

  // Keeping x2 alone leaves a constant.
  EXPECT_FALSE(variable_reduction_search(prod, std::vector<FqElem>{f3->one()}, 2, 10, std::vector<std::size_t>{1}));
}

// Smallest point where the lemma's sizes are enumerable: n = 2, r = s = delta = 1.
TEST(VariableReduction, LemmaSizesSucceed) {
  const auto b = variable_reduction_bounds(2, 1, 1, 1);
  EXPECT_EQ(b.D, 2);
  EXPECT_EQ(b.q_max, 64);
  EXPECT_EQ(b.set_size, 128);
  for (std::uint64_t p : {2u, 3u}) {
    const unsigned t = p == 2 ? 7 : 5;
    auto k = FqContext::create(p, t);
    std::vector<FqElem> S;
    for (std::uint64_t i = 0; i < 128; ++i) S.push_back(k->element_at(i));
    for (std::uint64_t code = 1; code < k->order(); code += k->order() / 17 + 1) {
      const std::vector<FqPoly> fs{FqPoly::monomial(k, ExponentVec{1, 0}, k->from_code(code))};
      const auto res = variable_reduction_search(fs, S, b.D, 64);
      ASSERT_TRUE(res);
      EXPECT_TRUE(independence_oracle(res->reduced).verdict.independent);
    }
  }
}

// Independent systems that stay independent together with the complementary
// variables: the search with eight candidates and primes up to 30 must succeed.
TEST(VariableReduction, SmallFamilyWithOverrides) {
  int attempted = 0;
  for (std::uint64_t p : {2u, 3u}) {
    auto base = FqContext::create(p, 1);
    auto k = FqContext::create(p, 3);
    const FieldEmbedding emb(base, k);
    std::vector<FqElem> S;
    for (std::uint64_t i = 0; i < 8; ++i) S.push_back(k->element_at(i));
    for (std::size_t n = 2; n <= 3; ++n) {
      for (const auto& sys : testing::singles_and_pairs(testing::monomials_and_binomials(base, n, 2))) {
        const std::size_t r = sys.size();
        if (r >= n) continue;
        std::vector<FqPoly> fs;
        for (const auto& f : sys) fs.push_back(f.map_coefficients(k, [&](FqElem c) { return emb(c); }));
        for (const auto& I : index_sets(n, r)) {
          std::vector<FqPoly> ext = fs;
          std::vector<std::size_t> rest;
          for (std::size_t j = 0; j < n; ++j)
            if (std::find(I.begin(), I.end(), j) == I.end()) ext.push_back(FqPoly::variable(k, n, j));
          if (!independence_oracle(ext).verdict.independent) continue;
          ++attempted;
          const std::uint64_t delta = max_degree(fs);
          const mpz_class D = static_cast<unsigned long>(r * checked_pow(delta, r + 1) + 1);
          const auto res = variable_reduction_search(fs, S, D, 30, I);
          ASSERT_TRUE(res) << "p=" << p << " f1=" << format_poly(fs[0]);
          ASSERT_TRUE(independence_oracle(res->reduced).verdict.independent);
          break;
        }
      }
    }
  }
  EXPECT_GT(attempted, 100);
}

TEST(HittingSet, Examples) {
  auto f5 = FqContext::create(5, 1);
  {
    HittingSetStream st(HittingParams::create(2, 2, 1, 1, 2), f5);
    std::vector<std::vector<FqElem>> pts;
    while (auto pt = st.next()) pts.push_back(pt->coordinates);
    EXPECT_EQ(pts.size(), 9u);
    EXPECT_EQ(st.raw_cardinality(), 9u);
  }
  {
    const auto hp = HittingParams::create(2, 1, 1, 1, 1, {2, 1, 2});
    EXPECT_TRUE(hp.heuristic());
    HittingSetStream st(hp, f5);
    EXPECT_EQ(st.raw_cardinality(), 4u);
    std::vector<std::vector<FqElem>> pts;
    while (auto pt = st.next()) pts.push_back(pt->coordinates);
    const std::vector<std::vector<FqElem>> expect{
        {f5->zero(), f5->zero()}, {f5->one(), f5->zero()}, {f5->zero(), f5->one()}};
    EXPECT_EQ(pts, expect);
    EXPECT_EQ(st.emitted(), 3u);
  }
  EXPECT_THROW(HittingSetStream(HittingParams::create(3, 2, 2, 2, 5), f5), CapExceeded);
  EXPECT_THROW(HittingSetStream(HittingParams::create(2, 1, 1, 1, 1), f5), DomainError);
  EXPECT_THROW(HittingSetStream(HittingParams::create(2, 2, 1, 1, 9), f5), DomainError);
}

TEST(HittingSet, CoordinatesComeFromTheSets) {
  auto f2 = FqContext::create(2, 1);
  const auto hp = HittingParams::create(4, 2, 2, 2, 3, {std::nullopt, 6, 13});
  auto k = hitting_field(f2, hp);
  EXPECT_EQ(k->order(), 8u);
  HittingSetStream st(hp, k);
  std::vector<FqElem> s1, s2;
  for (std::uint64_t i = 0; i < 4; ++i) s1.push_back(k->element_at(i));
  for (std::uint64_t i = 0; i < 6; ++i) s2.push_back(k->element_at(i));
  std::size_t count = 0;
  while (auto pt = st.next()) {
    ++count;
    ASSERT_EQ(pt->index_set.size(), 2u);
    for (std::size_t k2 = 0; k2 < 2; ++k2) {
      ASSERT_EQ(pt->coordinates[pt->index_set[k2]], pt->b[k2]);
      ASSERT_NE(std::find(s1.begin(), s1.end(), pt->b[k2]), s1.end());
    }
    ASSERT_NE(std::find(s2.begin(), s2.end(), *pt->c), s2.end());
    std::size_t i = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      if (std::find(pt->index_set.begin(), pt->index_set.end(), j) != pt->index_set.end()) continue;
      ASSERT_EQ(pt->coordinates[j], substitution_point(*k, *pt->c, hp.D, *pt->q, 2)[i++]);
    }
  }
  EXPECT_EQ(st.raw_cardinality(), 6u * 16 * 6 * 6);
  EXPECT_LE(count, st.raw_cardinality());
  const auto js = HitPoint{{k->one()}, {0}, {k->one()}, std::nullopt, std::nullopt}.to_json(*k);
  EXPECT_EQ(js["I"], nlohmann::json({1}));
  EXPECT_TRUE(js["q"].is_null());
}

TEST(Hits, Examples) {
  auto f3 = FqContext::create(3, 1);
  {
    const std::vector<FqPoly> fs{fq(f3, "x1", 2)};
    HittingSetStream st(HittingParams::create(2, 1, 1, 1, 1, {std::nullopt, 3, 3}), f3);
    EXPECT_TRUE(hits(ycircuit(f3, "y1", 1), fs, st));
  }
  {
    const std::vector<FqPoly> fs{fq(f3, "x1", 2), fq(f3, "x1", 2)};
    HittingSetStream st(HittingParams::create(2, 1, 1, 1, 1, {std::nullopt, 3, 3}), f3);
    EXPECT_FALSE(hits(ycircuit(f3, "y1 - y2", 2), fs, st));
  }
  {
    // n = 2, m = r = 1, s = 1, delta = 1, d = 1.
    const std::vector<FqPoly> fs{fq(f3, "x2", 2)};
    const auto C = ycircuit(f3, "y1", 1);
    HittingSetStream st(HittingParams::create(2, 1, 1, 1, 1, {std::nullopt, 3, 5}), f3);
    const auto pt = hits(C, fs, st);
    ASSERT_TRUE(pt);
    const auto composed = compose<FqContext>(parse_poly(f3, "y1", default_variable_names(1, "y")), fs);
    EXPECT_FALSE(f3->is_zero(evaluate_at<FqContext>(composed, pt->coordinates)));
  }
}

// Every nonzero composition is hit; zero compositions are never hit.
TEST(Hits, SmallFamilyWithOverrides) {
  const char* circuits[] = {"y1", "y1 + y2", "y1*y2", "y1^2 - y2", "y1 - y2", "y1*y2 + 1", "y2^2 + y1*y2"};
  int hit = 0, zero = 0;
  for (std::uint64_t p : {2u, 3u}) {
    auto base = FqContext::create(p, 1);
    for (const auto& sys : testing::singles_and_pairs(testing::monomials_and_binomials(base, 2, 2))) {
      if (sys.size() != 2) continue;
      const std::size_t r = independence_oracle(sys).verdict.independent ? 2 : 1;
      std::uint64_t s = 1;
      for (const auto& f : sys) s = std::max<std::uint64_t>(s, f.num_terms());
      for (const char* text : circuits) {
        const auto outer = parse_poly(base, text, default_variable_names(2, "y"));
        const auto composed = compose<FqContext>(outer, sys);
        const auto hp = HittingParams::create(2, r, s, max_degree(sys), std::max<std::uint64_t>(composed.degree(), 1),
                                              {std::nullopt, 8, 30});
        HittingSetStream st(hp, hitting_field(base, hp));
        const auto pt = hits(Circuit<FqContext>::from_poly(outer), sys, st);
        if (composed.is_zero()) {
          ASSERT_FALSE(pt);
          ++zero;
          continue;
        }
        ASSERT_TRUE(pt) << "p=" << p << " C=" << text << " f1=" << format_poly(sys[0]) << " f2=" << format_poly(sys[1]);
        const FieldEmbedding emb(base, st.field());
        const auto lifted = composed.map_coefficients(st.field(), [&](FqElem c) { return emb(c); });
        ASSERT_FALSE(st.field()->is_zero(evaluate_at<FqContext>(lifted, pt->coordinates)));
        ++hit;
      }
    }
  }
  EXPECT_GT(hit, 500);
  EXPECT_GT(zero, 5);
}

}  // namespace
}  // namespace wjit
