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

#include "wjit/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "wjit/error.hpp"
#include "wjit/numtheory.hpp"

namespace wjit {

std::optional<std::vector<FqElem>> nullspace(const FqContext& field, const FqMatrix& input) {
  FqMatrix m = input;
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols && row < m.rows; ++c) {
    std::size_t pr = row;
    while (pr < m.rows && field.is_zero(m.at(pr, c))) ++pr;
    if (pr == m.rows) continue;
    for (std::size_t k = 0; k < m.cols; ++k) std::swap(m.at(row, k), m.at(pr, k));
    const FqElem inv = field.inv(m.at(row, c));
    for (std::size_t k = 0; k < m.cols; ++k) m.at(row, k) = field.mul(m.at(row, k), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || field.is_zero(m.at(i, c))) continue;
      const FqElem f = m.at(i, c);
      for (std::size_t k = 0; k < m.cols; ++k) m.at(i, k) = field.sub(m.at(i, k), field.mul(f, m.at(row, k)));
    }
    pivot_col.push_back(c);
    ++row;
  }
  if (pivot_col.size() == m.cols) return std::nullopt;
  std::size_t free = 0;
  for (std::size_t k = 0; k < pivot_col.size() && pivot_col[k] == free; ++k) ++free;
  std::vector<FqElem> v(m.cols, field.zero());
  v[free] = field.one();
  for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = field.neg(m.at(k, free));
  return v;
}

std::uint64_t annihilator_degree_bound(std::span<const FqPoly> fs) {
  unsigned __int128 d = 1;
  for (const auto& f : fs) {
    d *= std::max<std::uint64_t>(f.degree(), 1);
    if (d > (std::uint64_t{1} << 40)) throw CapExceeded("oracle: annihilator degree bound overflows");
  }
  return static_cast<std::uint64_t>(d);
}

namespace {

// Exponent vectors of total degree <= d in r variables, grlex ascending.
std::vector<ExponentVec> monomials_up_to(std::size_t r, std::uint64_t d, std::size_t cap) {
  std::vector<ExponentVec> out;
  ExponentVec e(r, 0);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t pos, std::uint64_t left) {
    if (pos + 1 == r) {
      e[pos] = left;
      out.push_back(e);
      if (out.size() > cap) throw CapExceeded("oracle: more than " + std::to_string(cap) + " unknowns");
      return;
    }
    for (std::uint64_t x = left + 1; x-- > 0;) e[pos] = x, rec(pos + 1, left - x);
  };
  for (std::uint64_t deg = 0; deg <= d; ++deg) {
    const std::size_t start = out.size();
    rec(0, deg);
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(start), out.end(), grlex_less);
  }
  return out;
}

using SparseVec = std::vector<std::pair<std::uint32_t, FqElem>>;  // sorted by index

// a - c * b
SparseVec axpy(const FqContext& f, const SparseVec& a, FqElem c, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, f.neg(f.mul(c, b[j].second)));
      ++j;
    } else {
      const FqElem v = f.sub(a[i].second, f.mul(c, b[j].second));
      if (!f.is_zero(v)) out.emplace_back(a[i].first, v);
      ++i, ++j;
    }
  }
  return out;
}

}  // namespace

std::optional<Annihilator> annihilating_search(std::span<const FqPoly> fs, std::uint64_t d, std::size_t unknown_cap) {
  if (fs.empty()) throw DomainError("annihilating_search: no polynomials");
  if (d == 0) throw DomainError("annihilating_search: degree bound must be >= 1");
  const auto& field_ptr = fs[0].ring();
  const FqContext& field = *field_ptr;
  const std::size_t r = fs.size(), n = fs[0].arity();
  const auto monos = monomials_up_to(r, d, unknown_cap);

  // Columns f^beta, built from a cache of prior products.
  std::vector<std::vector<FqPoly>> powers(r);
  auto power = [&](std::size_t i, std::uint64_t e) -> const FqPoly& {
    auto& tab = powers[i];
    if (tab.empty()) tab.push_back(FqPoly::constant(field_ptr, n, field.one()));
    while (tab.size() <= e) tab.push_back(tab.back() * fs[i]);
    return tab[e];
  };
  std::unordered_map<ExponentVec, std::uint32_t, ExponentHash> row_index;
  auto column = [&](const ExponentVec& beta) {
    FqPoly prod = FqPoly::constant(field_ptr, n, field.one());
    for (std::size_t i = 0; i < r; ++i)
      if (beta[i]) prod = prod * power(i, beta[i]);
    SparseVec v;
    for (const auto& t : prod.terms()) {
      auto [it, _] = row_index.try_emplace(t.exps, static_cast<std::uint32_t>(row_index.size()));
      v.emplace_back(it->second, t.coeff);
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  };

  // Echelon basis keyed by pivot (lowest index); each row remembers the
  // combination of columns it came from.
  struct Row {
    SparseVec vec;
    SparseVec combo;
  };
  std::unordered_map<std::uint32_t, Row> basis;
  for (std::size_t k = 0; k < monos.size(); ++k) {
    Row cur{column(monos[k]), SparseVec{{static_cast<std::uint32_t>(k), field.one()}}};
    while (!cur.vec.empty()) {
      auto it = basis.find(cur.vec.front().first);
      if (it == basis.end()) break;
      const FqElem c = field.mul(cur.vec.front().second, field.inv(it->second.vec.front().second));
      cur.vec = axpy(field, cur.vec, c, it->second.vec);
      cur.combo = axpy(field, cur.combo, c, it->second.combo);
    }
    if (!cur.vec.empty()) {
      const std::uint32_t pivot = cur.vec.front().first;
      basis.emplace(pivot, std::move(cur));
      continue;
    }
    // Dependency found; column k carries coefficient 1 and is the grlex-largest.
    std::vector<FqPoly::Term> ts;
    for (const auto& [idx, c] : cur.combo) ts.push_back({monos[idx], c});
    Annihilator ann{FqPoly::from_terms(field_ptr, r, std::move(ts)), d};
    if (!compose<FqContext>(ann.poly, fs).is_zero())
      throw InternalError("annihilating_search: candidate does not annihilate");
    return ann;
  }
  return std::nullopt;
}

OracleResult independence_oracle(std::span<const FqPoly> fs, std::size_t unknown_cap) {
  if (fs.empty()) throw DomainError("independence_oracle: no polynomials");
  for (const auto& f : fs) fs[0].check_compatible(f, "independence_oracle");
  OracleResult out;
  out.verdict.method = "perron";
  const auto& field = fs[0].ring();
  const std::size_t r = fs.size();
  for (std::size_t i = 0; i < r; ++i) {
    if (!fs[i].is_constant()) continue;
    // y_i - c
    std::vector<FqPoly::Term> ts{{unit_exponents(r, i), field->one()},
                                 {zero_exponents(r), field->neg(fs[i].constant_term())}};
    out.annihilator = Annihilator{FqPoly::from_terms(field, r, std::move(ts)), 1};
    out.verdict.note = "f" + std::to_string(i + 1) + " is constant";
    return out;
  }
  const std::uint64_t bound = annihilator_degree_bound(fs);
  out.annihilator = annihilating_search(fs, bound, unknown_cap);
  out.verdict.independent = !out.annihilator.has_value();
  out.verdict.note = out.annihilator ? "annihilator of degree " + std::to_string(out.annihilator->poly.degree())
                                     : "no annihilator of degree <= " + std::to_string(bound);
  if (!out.annihilator && r > fs[0].arity())
    throw InternalError("independence_oracle: more polynomials than variables but no annihilator found");
  return out;
}

}  // namespace wjit
