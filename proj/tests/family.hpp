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

#ifndef WJIT_TESTS_FAMILY_HPP_
#define WJIT_TESTS_FAMILY_HPP_

#include <algorithm>
#include <vector>

#include "wjit/fq.hpp"
#include "wjit/wjcore.hpp"

namespace wjit::testing {

// Exponent vectors of total degree <= d in n variables, grlex ascending.
inline std::vector<ExponentVec> all_monomials(std::size_t n, Exponent d) {
  std::vector<ExponentVec> out;
  ExponentVec e(n, 0);
  while (true) {
    if (total_degree(e) <= d) out.push_back(e);
    std::size_t k = 0;
    while (k < n && e[k] == d) e[k++] = 0;
    if (k == n) break;
    ++e[k];
  }
  std::sort(out.begin(), out.end(), grlex_less);
  return out;
}

// Nonconstant monomials x^a (coefficient 1) and binomials x^a + c x^b with
// x^a grlex-larger and nonconstant, c in F_p^*, all of degree <= d.
inline std::vector<FqPoly> monomials_and_binomials(const FqPtr& field, std::size_t n, Exponent d) {
  const auto monos = all_monomials(n, d);
  std::vector<FqPoly> out;
  for (std::size_t a = 1; a < monos.size(); ++a) out.push_back(FqPoly::monomial(field, monos[a], field->one()));
  for (std::size_t a = 1; a < monos.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      for (std::uint64_t c = 1; c < field->p(); ++c)
        out.push_back(FqPoly::from_terms(field, n, {{monos[a], field->one()}, {monos[b], field->from_int(static_cast<std::int64_t>(c))}}));
  return out;
}

// Singles and unordered pairs (repeats allowed) drawn from the list.
inline std::vector<std::vector<FqPoly>> singles_and_pairs(const std::vector<FqPoly>& polys) {
  std::vector<std::vector<FqPoly>> out;
  for (const auto& f : polys) out.push_back({f});
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = i; j < polys.size(); ++j) out.push_back({polys[i], polys[j]});
  return out;
}

}  // namespace wjit::testing

#endif  // WJIT_TESTS_FAMILY_HPP_
