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

#ifndef WJIT_ORACLE_HPP_
#define WJIT_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wjit/fq.hpp"
#include "wjit/wjcore.hpp"

namespace wjit {

inline constexpr std::size_t kDefaultOracleUnknownCap = 20'000;

// Dense row-major matrix over F_q.
struct FqMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<FqElem> entries;
  FqElem& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const FqElem& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

// A nonzero kernel vector, with the first free column set to 1, when one exists.
std::optional<std::vector<FqElem>> nullspace(const FqContext& field, const FqMatrix& m);

struct Annihilator {
  FqPoly poly;  // in y_1..y_r; leading grlex coefficient 1
  std::uint64_t degree_bound;
};

// Annihilator of total degree <= d, if any; of least possible degree, and
// verified by composition.
std::optional<Annihilator> annihilating_search(std::span<const FqPoly> fs, std::uint64_t d,
                                               std::size_t unknown_cap = kDefaultOracleUnknownCap);

// prod max(delta_i, 1).
std::uint64_t annihilator_degree_bound(std::span<const FqPoly> fs);

struct OracleResult {
  IndependenceVerdict verdict;
  std::optional<Annihilator> annihilator;
};

OracleResult independence_oracle(std::span<const FqPoly> fs, std::size_t unknown_cap = kDefaultOracleUnknownCap);

}  // namespace wjit

#endif  // WJIT_ORACLE_HPP_
