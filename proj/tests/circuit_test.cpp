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

#include "wjit/circuit.hpp"
#include "wjit/fq.hpp"
#include "wjit/galois_ring.hpp"

namespace wjit {
namespace {

template <CoeffRing R>
Circuit<R> random_circuit(std::mt19937_64& rng, std::shared_ptr<const R> ring, std::size_t n, std::size_t gates,
                          std::uint64_t coeff_range) {
  Circuit<R> c(ring, n);
  std::uniform_int_distribution<std::int64_t> co(0, static_cast<std::int64_t>(coeff_range) - 1);
  for (std::size_t j = 0; j < n; ++j) c.variable(j);
  c.constant(ring->from_int(co(rng)));
  std::uniform_int_distribution<int> kind(0, 9);
  while (c.size() < gates) {
    std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
    const int k = kind(rng);
    if (k == 0) c.constant(ring->from_int(co(rng)));
    else if (k == 1) c.variable(pick(rng) % n);
    else if (k < 6) c.add(pick(rng), pick(rng));
    else c.mul(pick(rng), pick(rng));
  }
  return c;
}

TEST(CircuitEval, Examples) {
  auto f3 = FqContext::create(3, 1);
  Circuit<FqContext> k(f3, 2);
  k.constant(f3->from_int(2));
  const FqElem pt[] = {f3->one(), f3->one()};
  EXPECT_EQ(k.evaluate(pt), f3->from_int(2));

  Circuit<FqContext> c(f3, 2);
  const auto x1 = c.variable(0), x2 = c.variable(1);
  c.add(c.mul(x1, x1), x2);
  const FqElem at[] = {f3->from_int(2), f3->from_int(1)};
  EXPECT_EQ(c.evaluate(at), f3->from_int(2));
  const FqElem short_pt[] = {f3->one()};
  EXPECT_THROW(c.evaluate(short_pt), MismatchError);
}

TEST(CircuitEval, AgreesWithExpansion) {
  std::mt19937_64 rng(1);
  auto f9 = FqContext::create(3, 2);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = random_circuit(rng, f9, 3, 12, 9);
    auto f = c.to_sparse_poly();
    for (int k = 0; k < 5; ++k) {
      std::uniform_int_distribution<std::uint64_t> pick(0, 8);
      const FqElem pt[] = {FqElem{pick(rng)}, FqElem{pick(rng)}, FqElem{pick(rng)}};
      ASSERT_EQ(c.evaluate(pt), evaluate_at<FqContext>(f, pt));
    }
  }
}

TEST(CircuitDegree, Examples) {
  auto f2 = FqContext::create(2, 1);
  Circuit<FqContext> v(f2, 1);
  v.variable(0);
  EXPECT_EQ(v.degree_bound(), 1u);
  Circuit<FqContext> q(f2, 1);
  const auto x = q.variable(0);
  const auto xx = q.mul(x, x);
  q.mul(xx, xx);
  EXPECT_EQ(q.degree_bound(), 4u);
  // x + x vanishes over F_2 but the syntactic bound stays 1.
  Circuit<FqContext> z(f2, 1);
  const auto y = z.variable(0);
  z.add(y, y);
  EXPECT_EQ(z.degree_bound(), 1u);
  EXPECT_TRUE(z.to_sparse_poly().is_zero());
}

TEST(CircuitDegree, BoundsTrueDegreeAndIsMonotone) {
  std::mt19937_64 rng(2);
  auto f4 = FqContext::create(2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = random_circuit(rng, f4, 3, 12, 4);
    ASSERT_GE(c.degree_bound(), c.to_sparse_poly().degree());
    ASSERT_LE(c.degree_bound(), std::uint64_t{1} << std::min<std::size_t>(c.size(), 63));
    // Multiplying the output by anything never lowers the bound.
    const auto before = c.degree_bound();
    c.mul(c.output(), 0);
    ASSERT_GE(c.degree_bound(), before);
  }
}

TEST(CircuitDerivative, Examples) {
  auto f5 = FqContext::create(5, 1);
  Circuit<FqContext> x(f5, 2);
  x.variable(0);
  auto dx = x.derivative(0);
  const FqElem pt[] = {f5->from_int(3), f5->from_int(4)};
  EXPECT_EQ(dx.evaluate(pt), f5->one());
  EXPECT_EQ(x.derivative(1).evaluate(pt), f5->zero());

  Circuit<FqContext> m(f5, 2);
  m.mul(m.variable(0), m.variable(1));
  EXPECT_EQ(m.derivative(0).to_sparse_poly(), SparsePoly<FqContext>::variable(f5, 2, 1));
}

TEST(CircuitDerivative, AgreesWithSymbolicDerivative) {
  std::mt19937_64 rng(3);
  auto f9 = FqContext::create(3, 2);
  auto z9 = GrContext::create(FqContext::create(3, 1), 2);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = random_circuit(rng, f9, 3, 10, 9);
    const std::size_t j = trial % 3;
    const auto d = c.derivative(j);
    const auto sym = partial_derivative(c.to_sparse_poly(), j);
    ASSERT_EQ(d.to_sparse_poly(), sym);
    std::uniform_int_distribution<std::uint64_t> pick(0, 8);
    for (int k = 0; k < 5; ++k) {
      const FqElem pt[] = {FqElem{pick(rng)}, FqElem{pick(rng)}, FqElem{pick(rng)}};
      ASSERT_EQ(d.evaluate(pt), evaluate_at<FqContext>(sym, pt));
    }
    auto g = random_circuit(rng, z9, 2, 10, 9);
    ASSERT_EQ(g.derivative(j % 2).to_sparse_poly(), partial_derivative(g.to_sparse_poly(), j % 2));
  }
}

TEST(CircuitCompact, Examples) {
  auto f5 = FqContext::create(5, 1);
  Circuit<FqContext> c(f5, 2);
  const auto x = c.variable(0), y = c.variable(1), x2 = c.variable(0);
  const auto one = c.constant(f5->one()), zero = c.constant(f5->zero());
  const auto a = c.mul(one, c.add(x, y));
  const auto b = c.add(c.add(y, x2), zero);
  c.set_output(c.mul(a, b));
  const auto k = c.compact();
  EXPECT_EQ(k.size(), 4u);  // x, y, x + y, (x + y)^2
  EXPECT_EQ(k.to_sparse_poly(), c.to_sparse_poly());
  Circuit<FqContext> z(f5, 1);
  z.set_output(z.mul(z.variable(0), z.constant(f5->zero())));
  EXPECT_EQ(z.compact().size(), 1u);
  EXPECT_EQ(z.compact().degree_bound(), 0u);
}

TEST(CircuitCompact, PreservesPolynomialAndShrinks) {
  std::mt19937_64 rng(12);
  auto f4 = FqContext::create(2, 2);
  auto z27 = GrContext::create(FqContext::create(3, 1), 3);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = random_circuit(rng, f4, 3, 14, 4);
    const auto k = c.compact();
    ASSERT_EQ(k.to_sparse_poly(), c.to_sparse_poly());
    ASSERT_LE(k.size(), c.size());
    ASSERT_LE(k.degree_bound(), c.degree_bound());
    auto g = random_circuit(rng, z27, 2, 14, 27);
    ASSERT_EQ(g.compact().to_sparse_poly(), g.to_sparse_poly());
    ASSERT_EQ(g.compact().compact().size(), g.compact().size());
  }
}

TEST(CircuitExpand, Examples) {
  auto z9 = GrContext::create(FqContext::create(3, 1), 2);
  Circuit<GrContext> c(z9, 2);
  const auto s = c.add(c.variable(0), c.variable(1));
  c.mul(s, s);
  EXPECT_EQ(c.to_sparse_poly(), parse_poly(z9, "x1^2 + 2*x1*x2 + x2^2", 2));

  auto f7 = FqContext::create(7, 1);
  Circuit<FqContext> big(f7, 10);
  std::size_t acc = big.constant(f7->one());
  for (std::size_t j = 0; j < 10; ++j) acc = big.add(acc, big.variable(j));
  EXPECT_EQ(big.to_sparse_poly(11).num_terms(), 11u);
  big.mul(acc, big.variable(0));
  EXPECT_THROW(big.to_sparse_poly(10), CapExceeded);
}

TEST(CircuitFormat, RoundTrip) {
  std::mt19937_64 rng(4);
  auto f4 = FqContext::create(2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    auto c = random_circuit(rng, f4, 2, 10, 4);
    auto back = parse_circuit(f4, format_circuit(c), 2);
    ASSERT_EQ(back.to_sparse_poly(), c.to_sparse_poly());
    ASSERT_EQ(format_circuit(back), format_circuit(c));
  }
}

TEST(CircuitFormat, Errors) {
  auto f2 = FqContext::create(2, 1);
  EXPECT_THROW(parse_circuit(f2, "n1 = var 1\n", 1), ParseError);
  EXPECT_THROW(parse_circuit(f2, "n1 = var 3\nout n1\n", 2), ParseError);
  EXPECT_THROW(parse_circuit(f2, "n1 = add n2 n3\nout n1\n", 2), ParseError);
  EXPECT_THROW(parse_circuit(f2, "n1 = pow n1 2\nout n1\n", 2), ParseError);
  try {
    parse_circuit(f2, "# comment\nn1 = var 1\nn2 = mul n1 n9\nout n2\n", 1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  auto ok = parse_circuit(f2, "n1 = var 1\n\nn2 = const 1  # one\nn3 = add n1 n2\nout n3\n", 1);
  EXPECT_EQ(ok.to_sparse_poly(), parse_poly(f2, "x1 + 1", 1));
}

TEST(CircuitBuild, FromPolyAndPower) {
  std::mt19937_64 rng(5);
  auto f9 = FqContext::create(3, 2);
  auto f = parse_poly(f9, "[1,1]*x1^5*x2 + 2*x2^7 + [0,1]", 2);
  EXPECT_EQ(Circuit<FqContext>::from_poly(f).to_sparse_poly(), f);
  Circuit<FqContext> c(f9, 1);
  c.power(c.variable(0), 13);
  EXPECT_EQ(c.to_sparse_poly(), parse_poly(f9, "x1^13", 1));
  EXPECT_LE(c.size(), 8u);
}

TEST(CircuitMap, ConstantsIntoGaloisRing) {
  auto f3 = FqContext::create(3, 1);
  auto z9 = GrContext::create(f3, 2);
  auto c = Circuit<FqContext>::from_poly(parse_poly(f3, "2*x1^3 + x1", 1));
  auto lifted = c.map_constants(z9, [&](const FqElem& a) { return z9->lift(a); });
  EXPECT_EQ(lifted.to_sparse_poly(), parse_poly(z9, "2*x1^3 + x1", 1));
  const GrElem pt[] = {z9->from_int(4)};
  EXPECT_EQ(lifted.evaluate(pt), z9->from_int(2 * 64 + 4));
}

}  // namespace
}  // namespace wjit
