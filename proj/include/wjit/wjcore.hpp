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

#ifndef WJIT_WJCORE_HPP_
#define WJIT_WJCORE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "wjit/fq.hpp"
#include "wjit/galois_ring.hpp"
#include "wjit/poly.hpp"

namespace wjit {

using FqPoly = SparsePoly<FqContext>;
using GrPoly = SparsePoly<GrContext>;

inline constexpr std::size_t kDefaultWjpTermCap = 1'000'000;

// Largest l with p^l <= delta^r.
unsigned choose_level(std::uint64_t r, std::uint64_t delta, std::uint64_t p);

// Strictly increasing r-subsets of {0..n-1} in colex order.
std::vector<std::vector<std::size_t>> index_sets(std::size_t n, std::size_t r);

// Coefficients embedded into the residue field of gr, then lifted
// coordinate-wise.
GrPoly lift_poly(const FqPoly& f, const GrPtr& gr);

// (g_1 ... g_r)^(p^level - 1) * prod_{j in I} x_j * det J_{x_I}(g).
GrPoly wjp(std::span<const GrPoly> gs, std::span<const std::size_t> index_set, unsigned level,
           std::size_t term_cap = kDefaultWjpTermCap);

// x_I * det J_{x_I}(g), no power factor.
GrPoly padic_jacobian_poly(std::span<const GrPoly> gs, std::span<const std::size_t> index_set,
                           std::size_t term_cap = kDefaultWjpTermCap);

enum class DegeneracyMode { bounded, unbounded };

struct DegeneracyReport {
  bool degenerate = true;
  // First term (in canonical order) failing its threshold.
  std::optional<ExponentVec> alpha;
  unsigned valuation = 0;
  unsigned threshold = 0;
};

// Valuation threshold of x^alpha: min(v_p(alpha), level) + 1 when bounded,
// v_p(alpha) + 1 when unbounded (nullopt for alpha = 0: coefficient must vanish).
std::optional<unsigned> degeneracy_threshold(const ExponentVec& alpha, std::uint64_t p, unsigned level,
                                             DegeneracyMode mode);

DegeneracyReport check_degeneracy(const GrPoly& f, unsigned level, DegeneracyMode mode);
inline bool is_degenerate(const GrPoly& f, unsigned level, DegeneracyMode mode = DegeneracyMode::bounded) {
  return check_degeneracy(f, level, mode).degenerate;
}

struct Witness {
  std::vector<std::size_t> index_set;  // 0-based
  ExponentVec alpha;
  unsigned coeff_valuation = 0;
  unsigned threshold = 0;
};

struct IndependenceVerdict {
  bool independent = false;
  bool conclusive = true;
  std::string method;
  std::optional<unsigned> level;
  std::optional<Witness> witness;
  std::string note;

  nlohmann::json to_json() const;
  static IndependenceVerdict from_json(const nlohmann::json& j);
};

struct WjOptions {
  std::size_t term_cap = kDefaultWjpTermCap;
  std::optional<unsigned> level;  // override; must be >= choose_level
};

IndependenceVerdict witt_jacobian_independent(std::span<const FqPoly> fs, const WjOptions& opts = {});

// Refuses (Refusal) unless p > delta^r.
IndependenceVerdict classical_jacobian_independent(std::span<const FqPoly> fs);

// Screens index sets with x_I det J (unbounded degeneracy); inconclusive when
// every one is degenerate. With index_set given, only that set is tried.
IndependenceVerdict padic_jacobian_necessity(std::span<const FqPoly> fs,
                                             std::optional<std::vector<std::size_t>> index_set = std::nullopt,
                                             std::size_t term_cap = kDefaultWjpTermCap);

unsigned padic_precision(std::uint64_t r, std::uint64_t delta, std::uint64_t p);

// Shared preliminary checks: r > n, constants. Returns a verdict when decided.
std::optional<IndependenceVerdict> trivial_verdict(std::span<const FqPoly> fs, const std::string& method);

std::uint64_t max_degree(std::span<const FqPoly> fs);

}  // namespace wjit

#endif  // WJIT_WJCORE_HPP_
