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

#ifndef WJIT_POLY_HPP_
#define WJIT_POLY_HPP_

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <json.hpp>

#include "wjit/error.hpp"
#include "wjit/numtheory.hpp"
#include "wjit/ring.hpp"

namespace wjit {

using Exponent = std::uint64_t;
using ExponentVec = boost::container::small_vector<Exponent, 4>;

struct ExponentHash {
  std::size_t operator()(const ExponentVec& e) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ e.size();
    for (Exponent x : e) h = (h ^ (x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2))) * 0xff51afd7ed558ccdull;
    return h;
  }
};

inline std::uint64_t total_degree(const ExponentVec& e) {
  std::uint64_t d = 0;
  for (Exponent x : e) d += x;
  return d;
}

// Graded lexicographic order, x1 most significant.
inline bool grlex_less(const ExponentVec& a, const ExponentVec& b) {
  const std::uint64_t da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// v_p(alpha) = max v with p^v | alpha_i for all i; kInfiniteValuation for 0.
inline std::uint32_t exp_vp(const ExponentVec& alpha, std::uint64_t p) {
  std::uint32_t v = kInfiniteValuation;
  for (Exponent a : alpha)
    if (a) v = std::min(v, vp(a, p));
  return v;
}

inline ExponentVec zero_exponents(std::size_t n) { return ExponentVec(n, 0); }

inline ExponentVec unit_exponents(std::size_t n, std::size_t j, Exponent k = 1) {
  ExponentVec e(n, 0);
  e[j] = k;
  return e;
}

inline constexpr std::size_t kNoTermCap = std::numeric_limits<std::size_t>::max();

// Canonical sparse multivariate polynomial over a CoeffRing. Terms are kept in
// descending graded-lex order with nonzero coefficients and unique exponents.
template <CoeffRing R>
class SparsePoly {
 public:
  using Ring = R;
  using Elem = typename R::Elem;
  using RingPtr = std::shared_ptr<const R>;
  struct Term {
    ExponentVec exps;
    Elem coeff;
  };

  SparsePoly() = default;
  SparsePoly(RingPtr ring, std::size_t arity) : ring_(std::move(ring)), arity_(arity) {}

  static SparsePoly constant(RingPtr ring, std::size_t arity, const Elem& c) {
    return monomial(ring, zero_exponents(arity), c);
  }
  static SparsePoly variable(RingPtr ring, std::size_t arity, std::size_t j) {
    if (j >= arity) throw DomainError("variable index out of range");
    auto one = ring->one();
    return monomial(std::move(ring), unit_exponents(arity, j), one);
  }
  static SparsePoly monomial(RingPtr ring, ExponentVec exps, const Elem& c) {
    SparsePoly f(std::move(ring), exps.size());
    if (!f.ring_->is_zero(c)) f.terms_.push_back({std::move(exps), c});
    return f;
  }
  // Merges duplicate exponents and drops zero coefficients.
  static SparsePoly from_terms(RingPtr ring, std::size_t arity, std::vector<Term> terms) {
    SparsePoly f(std::move(ring), arity);
    for (const auto& t : terms)
      if (t.exps.size() != arity) throw MismatchError("term arity mismatch");
    f.terms_ = std::move(terms);
    f.canonicalize();
    return f;
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t arity() const { return arity_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].exps) == 0);
  }
  // Total degree; 0 for the zero polynomial.
  std::uint64_t degree() const { return terms_.empty() ? 0 : total_degree(terms_.front().exps); }
  std::uint64_t degree_in(std::size_t j) const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exps[j]);
    return d;
  }

  Elem coefficient(const ExponentVec& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const ExponentVec& k) { return grlex_less(k, t.exps); });
    if (it != terms_.end() && it->exps == e) return it->coeff;
    return ring_->zero();
  }
  Elem constant_term() const { return coefficient(zero_exponents(arity_)); }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    if (a.arity_ != b.arity_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].exps != b.terms_[i].exps) return false;
      if (!a.ring_->equal(a.terms_[i].coeff, b.terms_[i].coeff)) return false;
    }
    return true;
  }

  SparsePoly operator-() const {
    SparsePoly r = *this;
    for (auto& t : r.terms_) t.coeff = ring_->neg(t.coeff);
    return r;
  }
  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
    a.check_compatible(b, "poly add");
    SparsePoly r(a.ring_, a.arity_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && grlex_less(b.terms_[j].exps, a.terms_[i].exps))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || grlex_less(a.terms_[i].exps, b.terms_[j].exps)) {
        r.terms_.push_back(b.terms_[j++]);
      } else {
        Elem c = a.ring_->add(a.terms_[i].coeff, b.terms_[j].coeff);
        if (!a.ring_->is_zero(c)) r.terms_.push_back({a.terms_[i].exps, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) { return a + (-b); }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) { return multiply(a, b); }

  static SparsePoly multiply(const SparsePoly& a, const SparsePoly& b, std::size_t term_cap = kNoTermCap) {
    a.check_compatible(b, "poly mul");
    SparsePoly r(a.ring_, a.arity_);
    if (a.is_zero() || b.is_zero()) return r;
    const R& ring = *a.ring_;
    std::unordered_map<ExponentVec, Elem, ExponentHash> acc;
    acc.reserve(std::min<std::size_t>(a.terms_.size() * b.terms_.size(), 1u << 20));
    const std::size_t guard = term_cap == kNoTermCap ? kNoTermCap : term_cap * 16;
    ExponentVec e(a.arity_);
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        for (std::size_t k = 0; k < a.arity_; ++k) e[k] = ta.exps[k] + tb.exps[k];
        Elem c = ring.mul(ta.coeff, tb.coeff);
        auto [it, inserted] = acc.try_emplace(e, c);
        if (!inserted) it->second = ring.add(it->second, c);
      }
      if (acc.size() > guard) throw CapExceeded("polynomial product exceeds term cap");
    }
    r.terms_.reserve(acc.size());
    for (auto& [exps, c] : acc)
      if (!ring.is_zero(c)) r.terms_.push_back({exps, std::move(c)});
    if (r.terms_.size() > term_cap)
      throw CapExceeded("polynomial product has " + std::to_string(r.terms_.size()) +
                        " terms, cap is " + std::to_string(term_cap));
    r.sort_terms();
    return r;
  }

  SparsePoly scale(const Elem& c) const {
    SparsePoly r(ring_, arity_);
    for (const auto& t : terms_) {
      Elem x = ring_->mul(t.coeff, c);
      if (!ring_->is_zero(x)) r.terms_.push_back({t.exps, std::move(x)});
    }
    return r;
  }

  // Repeated squaring.
  SparsePoly pow(std::uint64_t e, std::size_t term_cap = kNoTermCap) const {
    SparsePoly result = constant(ring_, arity_, ring_->one());
    SparsePoly base = *this;
    while (e) {
      if (e & 1) result = multiply(result, base, term_cap);
      e >>= 1;
      if (e) base = multiply(base, base, term_cap);
    }
    return result;
  }

  template <CoeffRing R2, class F>
  SparsePoly<R2> map_coefficients(std::shared_ptr<const R2> target, F&& fn) const {
    std::vector<typename SparsePoly<R2>::Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) ts.push_back({t.exps, fn(t.coeff)});
    return SparsePoly<R2>::from_terms(std::move(target), arity_, std::move(ts));
  }

  void check_compatible(const SparsePoly& b, const char* where) const {
    if (arity_ != b.arity_) throw MismatchError(std::string(where) + ": arity mismatch");
    require_same_ring(ring_, b.ring_, where);
  }

 private:
  void sort_terms() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return grlex_less(y.exps, x.exps); });
  }
  void canonicalize() {
    sort_terms();
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().exps == t.exps)
        merged.back().coeff = ring_->add(merged.back().coeff, t.coeff);
      else
        merged.push_back(std::move(t));
    }
    terms_.clear();
    for (auto& t : merged)
      if (!ring_->is_zero(t.coeff)) terms_.push_back(std::move(t));
  }

  RingPtr ring_;
  std::size_t arity_ = 0;
  std::vector<Term> terms_;
};

// Each term c x^alpha maps to alpha_j c x^{alpha - e_j}; the integer alpha_j
// enters through the canonical map Z -> R, so it may vanish.
template <CoeffRing R>
SparsePoly<R> partial_derivative(const SparsePoly<R>& f, std::size_t j) {
  if (j >= f.arity()) throw DomainError("partial_derivative: variable index out of range");
  const R& ring = *f.ring();
  std::vector<typename SparsePoly<R>::Term> ts;
  for (const auto& t : f.terms()) {
    if (t.exps[j] == 0) continue;
    auto c = ring.mul(ring.from_int(static_cast<std::int64_t>(t.exps[j])), t.coeff);
    if (ring.is_zero(c)) continue;
    ExponentVec e = t.exps;
    --e[j];
    ts.push_back({std::move(e), std::move(c)});
  }
  return SparsePoly<R>::from_terms(f.ring(), f.arity(), std::move(ts));
}

template <CoeffRing R>
struct PolyMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SparsePoly<R>> entries;  // row-major

  PolyMatrix() = default;
  PolyMatrix(std::size_t r, std::size_t c, std::vector<SparsePoly<R>> e)
      : rows(r), cols(c), entries(std::move(e)) {
    if (entries.size() != r * c) throw DomainError("PolyMatrix: entry count mismatch");
  }
  const SparsePoly<R>& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  SparsePoly<R>& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
};

inline void check_index_set(std::span<const std::size_t> index_set, std::size_t arity) {
  for (std::size_t k = 0; k < index_set.size(); ++k) {
    if (index_set[k] >= arity) throw DomainError("index set entry out of range");
    if (k && index_set[k] <= index_set[k - 1])
      throw DomainError("index set must be strictly increasing");
  }
}

// Entry (i, k) = d f_i / d x_{I_k}.
template <CoeffRing R>
PolyMatrix<R> jacobian_matrix(std::span<const SparsePoly<R>> fs, std::span<const std::size_t> index_set) {
  if (fs.empty()) throw DomainError("jacobian_matrix: empty system");
  check_index_set(index_set, fs[0].arity());
  std::vector<SparsePoly<R>> entries;
  entries.reserve(fs.size() * index_set.size());
  for (const auto& f : fs) {
    if (f.arity() != fs[0].arity()) throw MismatchError("jacobian_matrix: arity mismatch");
    for (std::size_t j : index_set) entries.push_back(partial_derivative(f, j));
  }
  return PolyMatrix<R>(fs.size(), index_set.size(), std::move(entries));
}

inline constexpr std::size_t kDefaultDetBound = 5;

// Laplace expansion along the last row, memoized over column subsets:
// minors[mask] is the determinant of rows 0..|mask|-1 restricted to the
// columns in mask. Needs no division, so it works over rings with zero
// divisors.
template <CoeffRing R>
SparsePoly<R> det_division_free(const PolyMatrix<R>& m, std::size_t bound = kDefaultDetBound,
                                std::size_t term_cap = kNoTermCap) {
  if (m.rows != m.cols) throw DomainError("det: matrix is not square");
  const std::size_t r = m.rows;
  if (r > bound) throw CapExceeded("det: dimension " + std::to_string(r) + " over bound");
  if (r == 0) throw DomainError("det: empty matrix has no ring context");
  const auto& ring = m.entries[0].ring();
  const std::size_t arity = m.entries[0].arity();
  std::vector<SparsePoly<R>> minors(std::size_t{1} << r);
  minors[0] = SparsePoly<R>::constant(ring, arity, ring->one());
  for (std::size_t mask = 1; mask < minors.size(); ++mask) {
    const auto k = static_cast<std::size_t>(__builtin_popcountll(mask));
    const std::size_t row = k - 1;
    SparsePoly<R> acc(ring, arity);
    std::size_t pos = 0;
    for (std::size_t j = 0; j < r; ++j) {
      if (!(mask >> j & 1)) continue;
      const auto& entry = m.at(row, j);
      const auto& sub = minors[mask & ~(std::size_t{1} << j)];
      if (!entry.is_zero() && !sub.is_zero()) {
        auto prod = SparsePoly<R>::multiply(entry, sub, term_cap);
        acc = ((row + pos) % 2 == 0) ? acc + prod : acc - prod;
      }
      ++pos;
    }
    minors[mask] = std::move(acc);
  }
  return minors.back();
}

// Partial substitution; assigned variables disappear (their exponents become
// 0) and the arity is unchanged.
template <CoeffRing R>
SparsePoly<R> evaluate(const SparsePoly<R>& f, const std::map<std::size_t, typename R::Elem>& assignment) {
  const R& ring = *f.ring();
  for (const auto& [j, v] : assignment)
    if (j >= f.arity()) throw DomainError("evaluate: variable index out of range");
  if (assignment.empty()) return f;
  std::map<std::pair<std::size_t, Exponent>, typename R::Elem> power_cache;
  auto power = [&](std::size_t j, Exponent e) -> typename R::Elem {
    auto key = std::make_pair(j, e);
    auto it = power_cache.find(key);
    if (it != power_cache.end()) return it->second;
    auto v = ring_pow(ring, assignment.at(j), e);
    power_cache.emplace(key, v);
    return v;
  };
  std::vector<typename SparsePoly<R>::Term> ts;
  ts.reserve(f.num_terms());
  for (const auto& t : f.terms()) {
    auto c = t.coeff;
    ExponentVec e = t.exps;
    for (const auto& [j, v] : assignment) {
      if (e[j]) c = ring.mul(c, power(j, e[j]));
      e[j] = 0;
    }
    ts.push_back({std::move(e), std::move(c)});
  }
  return SparsePoly<R>::from_terms(f.ring(), f.arity(), std::move(ts));
}

template <CoeffRing R>
typename R::Elem evaluate_at(const SparsePoly<R>& f, std::span<const typename R::Elem> point) {
  if (point.size() != f.arity()) throw MismatchError("evaluate_at: point arity mismatch");
  const R& ring = *f.ring();
  std::vector<std::map<Exponent, typename R::Elem>> cache(f.arity());
  auto result = ring.zero();
  for (const auto& t : f.terms()) {
    auto c = t.coeff;
    for (std::size_t j = 0; j < f.arity(); ++j) {
      if (!t.exps[j]) continue;
      auto it = cache[j].find(t.exps[j]);
      if (it == cache[j].end()) it = cache[j].emplace(t.exps[j], ring_pow(ring, point[j], t.exps[j])).first;
      c = ring.mul(c, it->second);
    }
    result = ring.add(result, c);
  }
  return result;
}

// F(g_1, ..., g_k) for F in k variables and g_i of a common arity.
template <CoeffRing R>
SparsePoly<R> compose(const SparsePoly<R>& outer, std::span<const SparsePoly<R>> inner,
                      std::size_t term_cap = kNoTermCap) {
  if (inner.size() != outer.arity()) throw MismatchError("compose: arity mismatch");
  if (inner.empty()) return outer;
  const std::size_t n = inner[0].arity();
  const auto& ring = outer.ring();
  std::vector<std::map<Exponent, SparsePoly<R>>> cache(inner.size());
  auto power = [&](std::size_t i, Exponent e) -> const SparsePoly<R>& {
    auto it = cache[i].find(e);
    if (it == cache[i].end()) it = cache[i].emplace(e, inner[i].pow(e, term_cap)).first;
    return it->second;
  };
  SparsePoly<R> result(ring, n);
  for (const auto& t : outer.terms()) {
    auto term = SparsePoly<R>::constant(ring, n, t.coeff);
    for (std::size_t i = 0; i < inner.size(); ++i)
      if (t.exps[i]) term = SparsePoly<R>::multiply(term, power(i, t.exps[i]), term_cap);
    result = result + term;
  }
  return result;
}

// Kronecker index sum_i alpha_i D^i (0-based i), CapExceeded on overflow.
inline Exponent kronecker_index(const ExponentVec& alpha, std::uint64_t base) {
  unsigned __int128 d = 0, w = 1;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    d += w * alpha[i];
    if (d > std::numeric_limits<Exponent>::max()) throw CapExceeded("kronecker index overflow");
    if (i + 1 < alpha.size()) {
      w *= base;
      if (w > std::numeric_limits<Exponent>::max()) w = static_cast<unsigned __int128>(std::numeric_limits<Exponent>::max()) + 1;
    }
  }
  return static_cast<Exponent>(d);
}

// x^alpha -> z^{sum alpha_i D^(i)}. With check set, requires D > deg f, the
// condition under which distinct terms stay distinct.
template <CoeffRing R>
SparsePoly<R> kronecker_substitute(const SparsePoly<R>& f, std::uint64_t base, bool check = false) {
  if (check && base <= f.degree())
    throw DomainError("kronecker_substitute: base " + std::to_string(base) +
                      " does not exceed degree " + std::to_string(f.degree()));
  std::vector<typename SparsePoly<R>::Term> ts;
  ts.reserve(f.num_terms());
  for (const auto& t : f.terms()) ts.push_back({ExponentVec{kronecker_index(t.exps, base)}, t.coeff});
  return SparsePoly<R>::from_terms(f.ring(), 1, std::move(ts));
}

template <CoeffRing R>
SparsePoly<R> reduce_exponents_mod(const SparsePoly<R>& f, std::uint64_t q) {
  if (f.arity() != 1) throw DomainError("reduce_exponents_mod: polynomial must be univariate");
  if (q == 0) throw DomainError("reduce_exponents_mod: modulus must be >= 1");
  std::vector<typename SparsePoly<R>::Term> ts;
  for (const auto& t : f.terms()) ts.push_back({ExponentVec{t.exps[0] % q}, t.coeff});
  return SparsePoly<R>::from_terms(f.ring(), 1, std::move(ts));
}

// Same polynomial in a larger variable set: variable j goes to mapping[j].
template <CoeffRing R>
SparsePoly<R> remap_variables(const SparsePoly<R>& f, std::size_t new_arity,
                              std::span<const std::size_t> mapping) {
  if (mapping.size() != f.arity()) throw MismatchError("remap_variables: mapping size");
  std::vector<typename SparsePoly<R>::Term> ts;
  for (const auto& t : f.terms()) {
    ExponentVec e(new_arity, 0);
    for (std::size_t j = 0; j < f.arity(); ++j) e.at(mapping[j]) += t.exps[j];
    ts.push_back({std::move(e), t.coeff});
  }
  return SparsePoly<R>::from_terms(f.ring(), new_arity, std::move(ts));
}

inline std::vector<std::string> default_variable_names(std::size_t n, const std::string& stem = "x") {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
  return names;
}

template <CoeffRing R>
std::string format_poly(const SparsePoly<R>& f, const std::vector<std::string>& names) {
  if (names.size() != f.arity()) throw MismatchError("format_poly: name count mismatch");
  if (f.is_zero()) return "0";
  const R& ring = *f.ring();
  std::ostringstream os;
  bool first = true;
  for (const auto& t : f.terms()) {
    if (!first) os << " + ";
    first = false;
    const bool constant = total_degree(t.exps) == 0;
    bool need_star = false;
    if (constant || !ring.equal(t.coeff, ring.one())) {
      os << ring.format(t.coeff);
      need_star = true;
    }
    for (std::size_t j = 0; j < t.exps.size(); ++j) {
      if (!t.exps[j]) continue;
      if (need_star) os << '*';
      os << names[j];
      if (t.exps[j] > 1) os << '^' << t.exps[j];
      need_star = true;
    }
  }
  return os.str();
}

template <CoeffRing R>
std::string format_poly(const SparsePoly<R>& f) {
  return format_poly(f, default_variable_names(f.arity()));
}

// Terms are '*'-separated factors (coefficient literals or name[^k]) joined by
// '+' or '-'. Coefficient literals use the ring's syntax.
template <CoeffRing R>
SparsePoly<R> parse_poly(std::shared_ptr<const R> ring, std::string_view text,
                         const std::vector<std::string>& names) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty polynomial");
  const std::size_t n = names.size();
  std::vector<typename SparsePoly<R>::Term> ts;

  auto parse_term = [&](const std::string& body, bool negative) {
    if (body.empty()) throw ParseError("empty term in '" + s + "'");
    auto coeff = ring->one();
    ExponentVec e(n, 0);
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t end = pos;
      int depth = 0;
      while (end < body.size() && !(body[end] == '*' && depth == 0)) {
        if (body[end] == '[') ++depth;
        if (body[end] == ']') --depth;
        ++end;
      }
      const std::string factor = body.substr(pos, end - pos);
      if (factor.empty()) throw ParseError("empty factor in '" + body + "'");
      if (factor[0] == '[' || std::isdigit(static_cast<unsigned char>(factor[0]))) {
        coeff = ring->mul(coeff, ring->parse(factor));
      } else {
        const auto caret = factor.find('^');
        const std::string name = factor.substr(0, caret);
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw ParseError("unknown variable '" + name + "'");
        Exponent k = 1;
        if (caret != std::string::npos) {
          const std::string ks = factor.substr(caret + 1);
          if (ks.empty() || !std::all_of(ks.begin(), ks.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw ParseError("malformed exponent '" + ks + "' in '" + factor + "'");
          k = std::stoull(ks);
        }
        e[static_cast<std::size_t>(it - names.begin())] += k;
      }
      pos = end + 1;
    }
    if (negative) coeff = ring->neg(coeff);
    ts.push_back({std::move(e), std::move(coeff)});
  };

  std::size_t i = 0;
  while (i < s.size()) {
    bool negative = false;
    bool saw_sign = false;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') negative = !negative;
      saw_sign = true;
      ++i;
    }
    if (!saw_sign && !ts.empty()) throw ParseError("expected '+' or '-' in '" + s + "'");
    std::size_t end = i;
    int depth = 0;
    while (end < s.size() && !((s[end] == '+' || s[end] == '-') && depth == 0 && end > i && s[end - 1] != '^')) {
      if (s[end] == '[') ++depth;
      if (s[end] == ']') --depth;
      ++end;
    }
    parse_term(s.substr(i, end - i), negative);
    i = end;
  }
  return SparsePoly<R>::from_terms(std::move(ring), n, std::move(ts));
}

template <CoeffRing R>
SparsePoly<R> parse_poly(std::shared_ptr<const R> ring, std::string_view text, std::size_t arity) {
  return parse_poly(std::move(ring), text, default_variable_names(arity));
}

template <CoeffRing R>
nlohmann::json poly_to_json(const SparsePoly<R>& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : f.terms())
    out.push_back({{"exps", std::vector<Exponent>(t.exps.begin(), t.exps.end())},
                   {"coeff", f.ring()->to_json(t.coeff)}});
  return out;
}

template <CoeffRing R>
SparsePoly<R> poly_from_json(std::shared_ptr<const R> ring, std::size_t arity, const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("polynomial JSON must be an array");
  std::vector<typename SparsePoly<R>::Term> ts;
  for (const auto& t : j) {
    const auto exps = t.at("exps").get<std::vector<Exponent>>();
    if (exps.size() != arity) throw ParseError("polynomial JSON: arity mismatch");
    ts.push_back({ExponentVec(exps.begin(), exps.end()), ring->from_json(t.at("coeff"))});
  }
  return SparsePoly<R>::from_terms(std::move(ring), arity, std::move(ts));
}

}  // namespace wjit

#endif  // WJIT_POLY_HPP_
