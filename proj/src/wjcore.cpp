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

#include "wjit/wjcore.hpp"

#include <gmpxx.h>

#include <algorithm>

#include "wjit/error.hpp"
#include "wjit/numtheory.hpp"

namespace wjit {

unsigned choose_level(std::uint64_t r, std::uint64_t delta, std::uint64_t p) {
  if (delta == 0) throw DomainError("choose_level: degree bound must be >= 1");
  if (r == 0) throw DomainError("choose_level: r must be >= 1");
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), delta, r);
  unsigned level = 0;
  mpz_class pw = p;
  while (pw <= bound) {
    ++level;
    pw *= static_cast<unsigned long>(p);
  }
  return level;
}

std::vector<std::vector<std::size_t>> index_sets(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  if (r > n) return out;
  std::vector<std::size_t> cur(r);
  for (std::size_t i = 0; i < r; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    // Colex successor: bump the lowest position that can move.
    std::size_t i = 0;
    while (i < r && cur[i] + 1 == (i + 1 < r ? cur[i + 1] : n)) ++i;
    if (i == r) break;
    ++cur[i];
    for (std::size_t k = 0; k < i; ++k) cur[k] = k;
  }
  return out;
}

GrPoly lift_poly(const FqPoly& f, const GrPtr& gr) {
  const FieldEmbedding emb(f.ring(), gr->base());
  return f.map_coefficients(gr, [&](const FqElem& c) { return gr->lift(emb(c)); });
}

namespace {

GrPoly jacobian_part(std::span<const GrPoly> gs, std::span<const std::size_t> index_set, std::size_t term_cap) {
  if (gs.empty()) throw DomainError("wjp: no polynomials");
  if (index_set.size() != gs.size()) throw DomainError("wjp: |I| must equal the number of polynomials");
  check_index_set(index_set, gs[0].arity());
  const auto m = jacobian_matrix<GrContext>(gs, index_set);
  GrPoly det = det_division_free(m, kDefaultDetBound, term_cap);
  ExponentVec xi(gs[0].arity(), 0);
  for (auto j : index_set) xi[j] = 1;
  return GrPoly::multiply(GrPoly::monomial(gs[0].ring(), xi, gs[0].ring()->one()), det, term_cap);
}

}  // namespace

GrPoly padic_jacobian_poly(std::span<const GrPoly> gs, std::span<const std::size_t> index_set,
                           std::size_t term_cap) {
  return jacobian_part(gs, index_set, term_cap);
}

GrPoly wjp(std::span<const GrPoly> gs, std::span<const std::size_t> index_set, unsigned level,
           std::size_t term_cap) {
  GrPoly jac = jacobian_part(gs, index_set, term_cap);
  const auto& ring = gs[0].ring();
  if (ring->precision() < level + 1)
    throw DomainError("wjp: ring precision " + std::to_string(ring->precision()) + " below level + 1 = " +
                      std::to_string(level + 1));
  if (jac.is_zero()) return jac;
  GrPoly prod = GrPoly::constant(ring, gs[0].arity(), ring->one());
  for (const auto& g : gs) prod = GrPoly::multiply(prod, g, term_cap);
  const std::uint64_t e = checked_pow(ring->p(), level) - 1;
  return GrPoly::multiply(prod.pow(e, term_cap), jac, term_cap);
}

std::optional<unsigned> degeneracy_threshold(const ExponentVec& alpha, std::uint64_t p, unsigned level,
                                             DegeneracyMode mode) {
  const std::uint32_t v = exp_vp(alpha, p);
  if (mode == DegeneracyMode::bounded) return std::min<std::uint64_t>(v, level) + 1;
  if (v == kInfiniteValuation) return std::nullopt;
  return v + 1;
}

DegeneracyReport check_degeneracy(const GrPoly& f, unsigned level, DegeneracyMode mode) {
  const auto& ring = *f.ring();
  const unsigned m = ring.precision();
  if (mode == DegeneracyMode::bounded && m < level + 1)
    throw DomainError("is_degenerate: precision " + std::to_string(m) + " below level + 1");
  DegeneracyReport rep;
  for (const auto& t : f.terms()) {
    const auto th = degeneracy_threshold(t.exps, ring.p(), level, mode);
    const unsigned val = ring.val_p(t.coeff);
    const unsigned need = th ? *th : m;
    if (need > m)
      throw DomainError("is_degenerate: precision " + std::to_string(m) + " cannot certify threshold p^" +
                        std::to_string(need));
    if (val < need) {
      rep.degenerate = false;
      rep.alpha = t.exps;
      rep.valuation = val;
      rep.threshold = need;
      return rep;
    }
  }
  return rep;
}

nlohmann::json IndependenceVerdict::to_json() const {
  nlohmann::json j;
  j["independent"] = independent;
  j["conclusive"] = conclusive;
  j["method"] = method;
  j["level"] = level ? nlohmann::json(*level) : nlohmann::json(nullptr);
  if (witness) {
    std::vector<std::size_t> one_based;
    for (auto i : witness->index_set) one_based.push_back(i + 1);
    j["witness"] = {{"I", one_based},
                    {"alpha", std::vector<Exponent>(witness->alpha.begin(), witness->alpha.end())},
                    {"coeff_valuation", witness->coeff_valuation},
                    {"threshold", witness->threshold}};
  } else {
    j["witness"] = nullptr;
  }
  if (!note.empty()) j["note"] = note;
  return j;
}

IndependenceVerdict IndependenceVerdict::from_json(const nlohmann::json& j) {
  IndependenceVerdict v;
  v.independent = j.at("independent").get<bool>();
  v.conclusive = j.at("conclusive").get<bool>();
  v.method = j.at("method").get<std::string>();
  if (!j.at("level").is_null()) v.level = j.at("level").get<unsigned>();
  if (const auto& w = j.at("witness"); !w.is_null()) {
    Witness wit;
    for (auto i : w.at("I").get<std::vector<std::size_t>>()) {
      if (i == 0) throw ParseError("verdict: index sets are 1-based");
      wit.index_set.push_back(i - 1);
    }
    for (auto a : w.at("alpha").get<std::vector<Exponent>>()) wit.alpha.push_back(a);
    wit.coeff_valuation = w.at("coeff_valuation").get<unsigned>();
    wit.threshold = w.at("threshold").get<unsigned>();
    v.witness = std::move(wit);
  }
  if (j.contains("note")) v.note = j.at("note").get<std::string>();
  return v;
}

std::uint64_t max_degree(std::span<const FqPoly> fs) {
  std::uint64_t d = 0;
  for (const auto& f : fs) d = std::max(d, f.degree());
  return d;
}

std::optional<IndependenceVerdict> trivial_verdict(std::span<const FqPoly> fs, const std::string& method) {
  if (fs.empty()) throw DomainError(method + ": need at least one polynomial");
  for (const auto& f : fs) fs[0].check_compatible(f, method.c_str());
  IndependenceVerdict v;
  v.method = method;
  if (fs.size() > fs[0].arity()) {
    v.note = "more polynomials than variables";
    return v;
  }
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (fs[i].is_constant()) {
      v.note = "f" + std::to_string(i + 1) + " is constant";
      return v;
    }
  return std::nullopt;
}

IndependenceVerdict witt_jacobian_independent(std::span<const FqPoly> fs, const WjOptions& opts) {
  if (auto v = trivial_verdict(fs, "witt-jacobian")) return *v;
  const std::uint64_t r = fs.size(), delta = max_degree(fs);
  const auto& field = fs[0].ring();
  const std::uint64_t p = field->p();
  const unsigned minimal = choose_level(r, delta, p);
  const unsigned level = opts.level.value_or(minimal);
  if (level < minimal)
    throw DomainError("witt_jacobian_independent: level " + std::to_string(level) + " below the admissible " +
                      std::to_string(minimal));
  const auto gr = GrContext::create(field, level + 1);
  std::vector<GrPoly> gs;
  for (const auto& f : fs) gs.push_back(lift_poly(f, gr));

  IndependenceVerdict v;
  v.method = "witt-jacobian";
  v.level = level;
  for (const auto& I : index_sets(fs[0].arity(), r)) {
    const auto rep = check_degeneracy(wjp(gs, I, level, opts.term_cap), level, DegeneracyMode::bounded);
    if (!rep.degenerate) {
      v.independent = true;
      v.witness = Witness{I, *rep.alpha, rep.valuation, rep.threshold};
      return v;
    }
  }
  return v;
}

IndependenceVerdict classical_jacobian_independent(std::span<const FqPoly> fs) {
  if (auto v = trivial_verdict(fs, "jacobian")) return *v;
  const std::uint64_t r = fs.size(), delta = max_degree(fs);
  const std::uint64_t p = fs[0].ring()->p();
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), delta, r);
  if (mpz_class(static_cast<unsigned long>(p)) <= bound)
    throw Refusal("classical Jacobian criterion needs p > delta^r (p = " + std::to_string(p) +
                  ", delta^r = " + bound.get_str() + "); use the Witt-Jacobian method");
  IndependenceVerdict v;
  v.method = "jacobian";
  for (const auto& I : index_sets(fs[0].arity(), r)) {
    if (!det_division_free(jacobian_matrix<FqContext>(fs, I)).is_zero()) {
      v.independent = true;
      v.note = "nonzero minor at I = {" + [&] {
        std::string s;
        for (auto i : I) s += (s.empty() ? "" : ",") + std::to_string(i + 1);
        return s;
      }() + "}";
      return v;
    }
  }
  return v;
}

unsigned padic_precision(std::uint64_t r, std::uint64_t delta, std::uint64_t p) {
  // floor(log_p(r delta)) + 2
  const unsigned __int128 rd = static_cast<unsigned __int128>(r) * delta;
  unsigned k = 0;
  unsigned __int128 pw = p;
  while (pw <= rd) ++k, pw *= p;
  return k + 2;
}

IndependenceVerdict padic_jacobian_necessity(std::span<const FqPoly> fs,
                                             std::optional<std::vector<std::size_t>> index_set,
                                             std::size_t term_cap) {
  if (auto v = trivial_verdict(fs, "padic")) return *v;
  const std::uint64_t r = fs.size(), delta = max_degree(fs);
  const auto& field = fs[0].ring();
  const unsigned m = padic_precision(r, delta, field->p());
  const auto gr = GrContext::create(field, m);
  std::vector<GrPoly> gs;
  for (const auto& f : fs) gs.push_back(lift_poly(f, gr));
  IndependenceVerdict v;
  v.method = "padic";
  v.level = m - 1;
  const auto sets = index_set ? std::vector<std::vector<std::size_t>>{*index_set} : index_sets(fs[0].arity(), r);
  for (const auto& I : sets) {
    const auto rep = check_degeneracy(padic_jacobian_poly(gs, I, term_cap), m - 1, DegeneracyMode::unbounded);
    if (!rep.degenerate) {
      v.independent = true;
      v.witness = Witness{I, *rep.alpha, rep.valuation, rep.threshold};
      return v;
    }
  }
  v.conclusive = false;
  v.note = "every x_I det J is degenerate; necessity gives no verdict";
  return v;
}

}  // namespace wjit
