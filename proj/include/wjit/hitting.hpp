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

#ifndef WJIT_HITTING_HPP_
#define WJIT_HITTING_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include <boost/container_hash/hash.hpp>
#include <json.hpp>

#include "wjit/circuit.hpp"
#include "wjit/wjcore.hpp"

namespace wjit {

inline constexpr std::uint64_t kDefaultHittingCap = 10'000'000;
inline constexpr std::uint64_t kMaxHittingFieldOrder = std::uint64_t{1} << 22;

struct HittingOverrides {
  std::optional<std::uint64_t> s1, s2, N;
};

struct HittingParams {
  std::uint64_t n = 0, r = 0, s = 0, delta = 0, d = 0;
  mpz_class D, N, s1, s2;  // formula values
  HittingOverrides overrides;

  static HittingParams create(std::uint64_t n, std::uint64_t r, std::uint64_t s, std::uint64_t delta, std::uint64_t d,
                              HittingOverrides overrides = {});

  // An override below its formula value.
  bool heuristic() const;
  // r < n: the c and q coordinates are present.
  bool has_substitution() const { return r < n; }
  mpz_class effective_s1() const;
  mpz_class effective_s2() const;
  mpz_class effective_N() const;
  nlohmann::json to_json() const;
};

// c^(D^i mod q) for i = 0..count-1, with 0^0 = 1.
std::vector<std::uint64_t> substitution_exponents(const mpz_class& D, std::uint64_t q, std::size_t count);
std::vector<FqElem> substitution_point(const FqContext& field, FqElem c, const mpz_class& D, std::uint64_t q,
                                       std::size_t count);

// Bounds of the variable-reduction lemma: D, |S| and the largest prime q.
struct ReductionBounds {
  mpz_class D, set_size, q_max;
};
ReductionBounds variable_reduction_bounds(std::uint64_t n, std::uint64_t r, std::uint64_t s, std::uint64_t delta);

struct NondegenerateSubstitution {
  std::size_t s_index = 0;
  std::optional<GrElem> c;  // absent when nothing is substituted
  std::uint64_t q = 0;
  GrPoly h;                 // in x_1..x_r
};

// Substitutes x_{r+1..n} by powers of c in S and searches primes q <= q_max
// ascending, then S in order, for a non-degenerate result at the level.
// Elements of S must be units. nullopt when the candidates run out.
std::optional<NondegenerateSubstitution> preserve_nondegeneracy_search(const GrPoly& g, std::size_t r, unsigned level,
                                                                       std::span<const GrElem> S, const mpz_class& D,
                                                                       std::uint64_t q_max);

struct VariableReduction {
  std::size_t s_index = 0;
  std::optional<FqElem> c;
  std::uint64_t q = 0;
  std::vector<FqElem> point;   // values of the substituted variables
  std::vector<FqPoly> reduced; // in the kept variables
};

// Keeps the variables in `keep` (default x_1..x_r) and substitutes the rest
// by powers of c; the reduced system must pass the Witt-Jacobian criterion.
std::optional<VariableReduction> variable_reduction_search(std::span<const FqPoly> fs, std::span<const FqElem> S,
                                                           const mpz_class& D, std::uint64_t q_max,
                                                           std::optional<std::vector<std::size_t>> keep = std::nullopt);

struct HitPoint {
  std::vector<FqElem> coordinates;
  std::vector<std::size_t> index_set;  // 0-based
  std::vector<FqElem> b;
  std::optional<FqElem> c;
  std::optional<std::uint64_t> q;

  nlohmann::json to_json(const FqContext& field) const;
};

// Smallest field F_{p^t}, t a multiple of the base degree, with room for the
// point sets.
FqPtr hitting_field(const FqPtr& base, const HittingParams& params);

// Points pi_I(b, c^(D^0 mod q), ...) with I colex, then q ascending, then c,
// then b in odometer order. Repeated points are skipped.
class HittingSetStream {
 public:
  HittingSetStream(const HittingParams& params, FqPtr field, std::uint64_t cap = kDefaultHittingCap);

  std::optional<HitPoint> next();
  const FqPtr& field() const { return field_; }
  // C(n,r) |S1|^r |S2| pi(N) (or |S1|^n when r = n), before removing repeats.
  std::uint64_t raw_cardinality() const { return raw_cardinality_; }
  std::uint64_t emitted() const { return emitted_; }

 private:
  bool advance();
  HitPoint build() const;

  HittingParams params_;
  FqPtr field_;
  std::vector<std::vector<std::size_t>> index_sets_;
  std::vector<std::uint64_t> primes_;
  std::vector<FqElem> s1_, s2_;
  std::size_t i_idx_ = 0, q_idx_ = 0, c_idx_ = 0;
  std::vector<std::size_t> b_idx_;
  bool started_ = false, done_ = false;
  std::uint64_t raw_cardinality_ = 0, emitted_ = 0;
  std::unordered_set<std::vector<std::uint64_t>, boost::hash<std::vector<std::uint64_t>>> seen_;
};

// First point of the stream where C(f_1, ..., f_m) is nonzero. The circuit
// and the polynomials share a field, which embeds into the stream's field.
std::optional<HitPoint> hits(const Circuit<FqContext>& C, std::span<const FqPoly> fs, HittingSetStream& stream);

}  // namespace wjit

#endif  // WJIT_HITTING_HPP_
