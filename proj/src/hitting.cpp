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

#include "wjit/hitting.hpp"

#include <algorithm>
#include <map>

#include "wjit/error.hpp"
#include "wjit/numtheory.hpp"

namespace wjit {

namespace {

constexpr std::uint64_t kMaxFormulaExponent = 1'000'000;

mpz_class mpz_pow(const mpz_class& base, std::uint64_t e) {
  if (e > kMaxFormulaExponent) throw CapExceeded("hitting: formula exponent " + std::to_string(e) + " too large");
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

// Drops every variable outside `keep`; their exponents must already be zero.
template <CoeffRing R>
SparsePoly<R> keep_variables(const SparsePoly<R>& f, std::span<const std::size_t> keep) {
  std::vector<typename SparsePoly<R>::Term> ts;
  ts.reserve(f.num_terms());
  for (const auto& t : f.terms()) {
    ExponentVec e(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) e[k] = t.exps[keep[k]];
    ts.push_back({std::move(e), t.coeff});
  }
  return SparsePoly<R>::from_terms(f.ring(), keep.size(), std::move(ts));
}

std::vector<std::size_t> complement_of(std::span<const std::size_t> keep, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n; ++j)
    if (std::find(keep.begin(), keep.end(), j) == keep.end()) out.push_back(j);
  return out;
}

template <CoeffRing R>
typename R::Elem pow0(const R& ring, const typename R::Elem& c, std::uint64_t e) {
  return e == 0 ? ring.one() : ring_pow(ring, c, e);
}

}  // namespace

HittingParams HittingParams::create(std::uint64_t n, std::uint64_t r, std::uint64_t s, std::uint64_t delta,
                                    std::uint64_t d, HittingOverrides overrides) {
  if (r == 0 || s == 0 || delta == 0) throw DomainError("hitting: r, s and delta must be >= 1");
  if (n < r) throw DomainError("hitting: need n >= r");
  HittingParams hp;
  hp.n = n, hp.r = r, hp.s = s, hp.delta = delta, hp.d = d;
  hp.overrides = overrides;
  hp.D = mpz_class(static_cast<unsigned long>(r)) * mpz_pow(mpz_class(static_cast<unsigned long>(delta)), r + 1) + 1;
  const mpz_class base = mpz_class(2) * delta * r * s;
  const mpz_class n2 = mpz_class(static_cast<unsigned long>(n)) * n;
  const std::uint64_t r2s = r * r * s;
  hp.N = n2 * mpz_pow(base, 7 * r2s);
  hp.s1 = mpz_class(static_cast<unsigned long>(d)) + 1;
  hp.s2 = n2 * mpz_pow(base, 9 * r2s);
  for (auto v : {overrides.s1, overrides.s2, overrides.N})
    if (v && *v == 0) throw DomainError("hitting: override sizes must be >= 1");
  return hp;
}

bool HittingParams::heuristic() const {
  auto below = [](const std::optional<std::uint64_t>& o, const mpz_class& f) {
    return o && mpz_class(static_cast<unsigned long>(*o)) < f;
  };
  return below(overrides.s1, s1) || (has_substitution() && (below(overrides.s2, s2) || below(overrides.N, N)));
}

mpz_class HittingParams::effective_s1() const {
  return overrides.s1 ? mpz_class(static_cast<unsigned long>(*overrides.s1)) : s1;
}
mpz_class HittingParams::effective_s2() const {
  return overrides.s2 ? mpz_class(static_cast<unsigned long>(*overrides.s2)) : s2;
}
mpz_class HittingParams::effective_N() const {
  return overrides.N ? mpz_class(static_cast<unsigned long>(*overrides.N)) : N;
}

nlohmann::json HittingParams::to_json() const {
  auto opt = [](const std::optional<std::uint64_t>& o) { return o ? nlohmann::json(*o) : nlohmann::json(nullptr); };
  return {{"n", n},
          {"r", r},
          {"s", s},
          {"delta", delta},
          {"d", d},
          {"D", D.get_str()},
          {"N", N.get_str()},
          {"S1", s1.get_str()},
          {"S2", s2.get_str()},
          {"overrides", {{"S1", opt(overrides.s1)}, {"S2", opt(overrides.s2)}, {"N", opt(overrides.N)}}},
          {"mode", heuristic() ? "override" : "certified"}};
}

std::vector<std::uint64_t> substitution_exponents(const mpz_class& D, std::uint64_t q, std::size_t count) {
  if (q < 2) throw DomainError("substitution_point: q must be >= 2");
  const mpz_class dm = D % mpz_class(static_cast<unsigned long>(q));
  const std::uint64_t step = to_u64(dm);
  std::vector<std::uint64_t> out;
  std::uint64_t e = 1 % q;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(e);
    e = mulmod(e, step, q);
  }
  return out;
}

std::vector<FqElem> substitution_point(const FqContext& field, FqElem c, const mpz_class& D, std::uint64_t q,
                                       std::size_t count) {
  std::vector<FqElem> out;
  for (auto e : substitution_exponents(D, q, count)) out.push_back(pow0(field, c, e));
  return out;
}

ReductionBounds variable_reduction_bounds(std::uint64_t n, std::uint64_t r, std::uint64_t s, std::uint64_t delta) {
  if (r == 0 || s == 0 || delta == 0) throw DomainError("variable_reduction_bounds: r, s and delta must be >= 1");
  ReductionBounds b;
  b.D = mpz_class(static_cast<unsigned long>(r)) * mpz_pow(mpz_class(static_cast<unsigned long>(delta)), r + 1) + 1;
  const mpz_class lg = ceil_log2(b.D);
  b.q_max = mpz_class(static_cast<unsigned long>(n)) * n * mpz_pow(mpz_class(2) * delta * r * s, 4 * r * r * s) * lg * lg;
  b.set_size = b.q_max * b.D;
  return b;
}

std::optional<NondegenerateSubstitution> preserve_nondegeneracy_search(const GrPoly& g, std::size_t r, unsigned level,
                                                                       std::span<const GrElem> S, const mpz_class& D,
                                                                       std::uint64_t q_max) {
  const std::size_t n = g.arity();
  if (r == 0 || r > n) throw DomainError("preserve_nondegeneracy_search: need 1 <= r <= n");
  const auto& ring = *g.ring();
  if (is_degenerate(g, level)) throw DomainError("preserve_nondegeneracy_search: input is degenerate");
  std::vector<std::size_t> keep(r);
  for (std::size_t k = 0; k < r; ++k) keep[k] = k;
  if (r == n) return NondegenerateSubstitution{0, std::nullopt, 0, g};
  for (const auto& c : S)
    if (ring.val_p(c) != 0) throw DomainError("preserve_nondegeneracy_search: candidate set meets pR");
  for (std::uint64_t q : primes_up_to(q_max)) {
    const auto exps = substitution_exponents(D, q, n - r);
    for (std::size_t k = 0; k < S.size(); ++k) {
      std::map<std::size_t, GrElem> assignment;
      for (std::size_t i = 0; i < n - r; ++i) assignment.emplace(r + i, pow0(ring, S[k], exps[i]));
      auto h = keep_variables(evaluate(g, assignment), keep);
      if (!is_degenerate(h, level)) return NondegenerateSubstitution{k, S[k], q, std::move(h)};
    }
  }
  return std::nullopt;
}

std::optional<VariableReduction> variable_reduction_search(std::span<const FqPoly> fs, std::span<const FqElem> S,
                                                           const mpz_class& D, std::uint64_t q_max,
                                                           std::optional<std::vector<std::size_t>> keep) {
  if (fs.empty()) throw DomainError("variable_reduction_search: no polynomials");
  const std::size_t n = fs[0].arity(), r = fs.size();
  if (r > n) throw DomainError("variable_reduction_search: more polynomials than variables");
  std::vector<std::size_t> kept;
  if (keep) {
    kept = *keep;
    check_index_set(kept, n);
    if (kept.size() != r) throw DomainError("variable_reduction_search: |keep| must equal r");
  } else {
    for (std::size_t k = 0; k < r; ++k) kept.push_back(k);
  }
  const auto& field = *fs[0].ring();
  const auto rest = complement_of(kept, n);
  if (rest.empty()) return VariableReduction{0, std::nullopt, 0, {}, std::vector<FqPoly>(fs.begin(), fs.end())};
  for (std::uint64_t q : primes_up_to(q_max)) {
    for (std::size_t k = 0; k < S.size(); ++k) {
      auto point = substitution_point(field, S[k], D, q, rest.size());
      std::map<std::size_t, FqElem> assignment;
      for (std::size_t i = 0; i < rest.size(); ++i) assignment.emplace(rest[i], point[i]);
      std::vector<FqPoly> reduced;
      for (const auto& f : fs) reduced.push_back(keep_variables(evaluate(f, assignment), kept));
      if (witt_jacobian_independent(reduced).independent)
        return VariableReduction{k, S[k], q, std::move(point), std::move(reduced)};
    }
  }
  return std::nullopt;
}

nlohmann::json HitPoint::to_json(const FqContext& field) const {
  nlohmann::json pt = nlohmann::json::array();
  for (auto a : coordinates) pt.push_back(field.to_json(a));
  std::vector<std::size_t> one_based;
  for (auto i : index_set) one_based.push_back(i + 1);
  return {{"point", pt},
          {"I", one_based},
          {"c", c ? field.to_json(*c) : nlohmann::json(nullptr)},
          {"q", q ? nlohmann::json(*q) : nlohmann::json(nullptr)}};
}

FqPtr hitting_field(const FqPtr& base, const HittingParams& params) {
  mpz_class need = params.effective_s1();
  if (params.has_substitution()) need = std::max(need, params.effective_s2());
  if (need > mpz_class(static_cast<unsigned long>(kMaxHittingFieldOrder)))
    throw CapExceeded("hitting: point sets of size " + need.get_str() + " need too large a field");
  const std::uint64_t p = base->p();
  unsigned t = base->degree();
  while (mpz_class(static_cast<unsigned long>(checked_pow(p, t))) < need) t += base->degree();
  return t == base->degree() ? base : FqContext::create(p, t);
}

HittingSetStream::HittingSetStream(const HittingParams& params, FqPtr field, std::uint64_t cap)
    : params_(params), field_(std::move(field)) {
  const mpz_class ucap = static_cast<unsigned long>(cap);
  const mpz_class s1 = params_.effective_s1();
  mpz_class raw = binomial(params_.n, params_.r) * mpz_pow(s1, params_.r);
  mpz_class need = s1;
  if (params_.has_substitution()) {
    const mpz_class s2 = params_.effective_s2(), N = params_.effective_N();
    if (N > ucap || s2 > ucap)
      throw CapExceeded("hitting-set: N = " + N.get_str() + ", |S2| = " + s2.get_str() +
                        " exceed the enumeration cap; supply overrides");
    primes_ = primes_up_to(to_u64(N));
    raw *= s2 * static_cast<unsigned long>(primes_.size());
    need = std::max(need, s2);
  }
  if (raw > ucap)
    throw CapExceeded("hitting-set: " + raw.get_str() + " points exceed the enumeration cap; supply overrides");
  if (need > mpz_class(static_cast<unsigned long>(field_->order())))
    throw DomainError("hitting-set: field of order " + std::to_string(field_->order()) + " too small for " +
                      need.get_str() + " distinct points");
  for (std::uint64_t k = 0; k < to_u64(s1); ++k) s1_.push_back(field_->element_at(k));
  if (params_.has_substitution())
    for (std::uint64_t k = 0; k < to_u64(params_.effective_s2()); ++k) s2_.push_back(field_->element_at(k));
  raw_cardinality_ = to_u64(raw);
  index_sets_ = index_sets(params_.n, params_.r);
  b_idx_.assign(params_.r, 0);
}

bool HittingSetStream::advance() {
  for (std::size_t k = b_idx_.size(); k-- > 0;) {
    if (++b_idx_[k] < s1_.size()) return true;
    b_idx_[k] = 0;
  }
  if (params_.has_substitution()) {
    if (++c_idx_ < s2_.size()) return true;
    c_idx_ = 0;
    if (++q_idx_ < primes_.size()) return true;
    q_idx_ = 0;
  }
  return ++i_idx_ < index_sets_.size();
}

HitPoint HittingSetStream::build() const {
  HitPoint pt;
  const auto& I = index_sets_[i_idx_];
  pt.index_set = I;
  pt.coordinates.assign(params_.n, field_->zero());
  for (std::size_t k = 0; k < I.size(); ++k) {
    pt.b.push_back(s1_[b_idx_[k]]);
    pt.coordinates[I[k]] = s1_[b_idx_[k]];
  }
  if (params_.has_substitution()) {
    pt.c = s2_[c_idx_];
    pt.q = primes_[q_idx_];
    const auto rest = complement_of(I, params_.n);
    const auto vals = substitution_point(*field_, *pt.c, params_.D, *pt.q, rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i) pt.coordinates[rest[i]] = vals[i];
  }
  return pt;
}

std::optional<HitPoint> HittingSetStream::next() {
  while (!done_) {
    if (!started_) {
      started_ = true;
      if (raw_cardinality_ == 0) done_ = true;
    } else if (!advance()) {
      done_ = true;
    }
    if (done_) break;
    auto pt = build();
    std::vector<std::uint64_t> key;
    for (auto a : pt.coordinates) key.push_back(a.code);
    if (!seen_.insert(std::move(key)).second) continue;
    ++emitted_;
    return pt;
  }
  return std::nullopt;
}

std::optional<HitPoint> hits(const Circuit<FqContext>& C, std::span<const FqPoly> fs, HittingSetStream& stream) {
  if (C.arity() != fs.size()) throw MismatchError("hits: circuit arity differs from the number of polynomials");
  if (fs.empty()) throw DomainError("hits: no polynomials");
  for (const auto& f : fs) {
    fs[0].check_compatible(f, "hits");
    require_same_ring(C.ring(), f.ring(), "hits");
  }
  const auto& K = stream.field();
  const FieldEmbedding emb(fs[0].ring(), K);
  std::vector<SparsePoly<FqContext>> lifted;
  for (const auto& f : fs) lifted.push_back(f.map_coefficients(K, [&](FqElem c) { return emb(c); }));
  while (auto pt = stream.next()) {
    std::vector<FqElem> vals;
    for (const auto& f : lifted) vals.push_back(evaluate_at<FqContext>(f, pt->coordinates));
    if (!K->is_zero(C.evaluate_in(*K, vals, [&](FqElem c) { return emb(c); }))) return pt;
  }
  return std::nullopt;
}

}  // namespace wjit
