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

#include "wjit/interp.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>

#include "wjit/error.hpp"
#include "wjit/numtheory.hpp"

namespace wjit {

InterpPlan InterpPlan::create(GrPtr ring, std::uint64_t D, std::uint64_t point_cap) {
  InterpPlan plan;
  plan.t = ring->degree();
  plan.D = D;
  plan.order = ring->base()->order() - 1;
  if (plan.order > point_cap)
    throw CapExceeded("interp: " + std::to_string(plan.order) + " evaluation points exceed the cap");
  plan.xi = ring->xi();
  plan.inv_order = ring->unit_inv(ring->from_bigint(mpz_class(static_cast<unsigned long>(plan.order))));
  plan.xi_powers.reserve(plan.order);
  GrElem acc = ring->one();
  for (std::uint64_t j = 0; j < plan.order; ++j) {
    plan.xi_powers.push_back(acc);
    acc = ring->mul(acc, plan.xi);
  }
  if (!ring->equal(acc, ring->one())) throw InternalError("interp: xi does not have order p^t - 1");
  plan.ring = std::move(ring);
  return plan;
}

GrElem interp_coeff_from_values(std::span<const GrElem> values, std::uint64_t d, const InterpPlan& plan) {
  const auto& ring = *plan.ring;
  if (values.size() != plan.order) throw MismatchError("interp_coeff: expected one value per root of unity");
  if (d >= plan.order) throw DomainError("interp_coeff: exponent " + std::to_string(d) + " not below p^t - 1");
  // xi^(-j d) = xi^((order - j d mod order) mod order)
  GrElem sum = ring.zero();
  std::uint64_t idx = 0;
  const std::uint64_t step = (plan.order - d % plan.order) % plan.order;
  for (std::uint64_t j = 0; j < plan.order; ++j) {
    sum = ring.add(sum, ring.mul(plan.xi_powers[idx], values[j]));
    idx += step;
    if (idx >= plan.order) idx -= plan.order;
  }
  return ring.mul(plan.inv_order, sum);
}

GrElem interp_coeff(const std::function<GrElem(const GrElem&)>& f, std::uint64_t d, const InterpPlan& plan) {
  std::vector<GrElem> values;
  values.reserve(plan.order);
  for (const auto& z : plan.xi_powers) values.push_back(f(z));
  return interp_coeff_from_values(values, d, plan);
}

unsigned choose_t(unsigned e, std::uint64_t D, std::uint64_t n, std::uint64_t p, std::uint64_t point_cap) {
  if (e == 0) throw DomainError("choose_t: e must be >= 1");
  mpz_class need;
  mpz_ui_pow_ui(need.get_mpz_t(), D, n);
  const mpz_class cap = static_cast<unsigned long>(point_cap);
  for (unsigned t = e;; t += e) {
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), p, t);
    q -= 1;
    if (q > cap)
      throw CapExceeded("choose_t: p^t - 1 >= D^n = " + need.get_str() + " needs more than " +
                        std::to_string(point_cap) + " evaluation points");
    if (q >= need) return t;
  }
}

namespace {

// Copies `from` into `into`; returns the gate holding from's output.
std::size_t append_circuit(Circuit<GrContext>& into, const Circuit<GrContext>& from) {
  std::vector<std::size_t> map;
  map.reserve(from.size());
  for (const auto& g : from.gates()) {
    switch (g.kind) {
      case GateKind::constant: map.push_back(into.constant(g.value)); break;
      case GateKind::variable: map.push_back(into.variable(g.var)); break;
      case GateKind::add: map.push_back(into.add(map[g.lhs], map[g.rhs])); break;
      case GateKind::mul: map.push_back(into.mul(map[g.lhs], map[g.rhs])); break;
    }
  }
  return map.at(from.output());
}

// Laplace expansion along the first remaining row, memoized on column sets.
std::size_t det_gates(Circuit<GrContext>& c, const std::vector<std::vector<std::size_t>>& m, std::size_t minus_one) {
  const std::size_t r = m.size();
  std::map<std::uint32_t, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::uint32_t)> rec = [&](std::size_t row, std::uint32_t cols) {
    if (row == r) return c.constant(c.ring()->one());
    if (auto it = memo.find(cols); it != memo.end()) return it->second;
    std::size_t acc = 0;
    bool have = false, negative = false;
    for (std::size_t j = 0; j < r; ++j) {
      if (cols & (1u << j)) continue;
      std::size_t term = c.mul(m[row][j], rec(row + 1, cols | (1u << j)));
      if (negative) term = c.mul(minus_one, term);
      acc = have ? c.add(acc, term) : term;
      have = true;
      negative = !negative;
    }
    memo.emplace(cols, acc);
    return acc;
  };
  return rec(0, 0);
}

}  // namespace

Circuit<GrContext> wjp_circuit(std::span<const Circuit<GrContext>> gs, std::span<const std::size_t> index_set,
                               unsigned level) {
  if (gs.empty()) throw DomainError("wjp_circuit: no circuits");
  if (index_set.size() != gs.size()) throw DomainError("wjp_circuit: |I| must equal the number of circuits");
  if (gs.size() > 20) throw CapExceeded("wjp_circuit: too many circuits for the determinant");
  const auto& ring = gs[0].ring();
  const std::size_t n = gs[0].arity(), r = gs.size();
  check_index_set(index_set, n);
  if (ring->precision() < level + 1) throw DomainError("wjp_circuit: ring precision below level + 1");
  Circuit<GrContext> c(ring, n);
  std::size_t prod = c.constant(ring->one());
  for (const auto& g : gs) {
    if (g.arity() != n) throw MismatchError("wjp_circuit: arity mismatch");
    prod = c.mul(prod, append_circuit(c, g));
  }
  std::vector<std::vector<std::size_t>> jac(r, std::vector<std::size_t>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) jac[i][k] = append_circuit(c, gs[i].derivative(index_set[k]));
  const std::size_t det = det_gates(c, jac, c.constant(ring->from_int(-1)));
  std::size_t out = c.mul(c.power(prod, checked_pow(ring->p(), level) - 1), det);
  for (auto j : index_set) out = c.mul(c.variable(j), out);
  c.set_output(out);
  return c.compact();
}

Algo5Parameters algo5_parameters(std::span<const Circuit<FqContext>> Cs, std::uint64_t point_cap) {
  if (Cs.empty()) throw DomainError("algo5: no circuits");
  Algo5Parameters ap;
  for (const auto& C : Cs) ap.delta = std::max(ap.delta, C.degree_bound());
  if (ap.delta == 0) throw DomainError("algo5: all circuits are constant");
  const std::uint64_t r = Cs.size(), n = Cs[0].arity();
  const auto& field = *Cs[0].ring();
  ap.level = choose_level(r, ap.delta, field.p());
  const mpz_class D = mpz_class(static_cast<unsigned long>(r)) *
                          [&] {
                            mpz_class x;
                            mpz_ui_pow_ui(x.get_mpz_t(), ap.delta, r + 1);
                            return x;
                          }() +
                      1;
  if (D > mpz_class(static_cast<unsigned long>(point_cap)))
    throw CapExceeded("algo5: Kronecker base " + D.get_str() + " too large");
  ap.D = to_u64(D);
  ap.t = choose_t(field.degree(), ap.D, n, field.p(), point_cap);
  return ap;
}

IndependenceVerdict algo5_independence(std::span<const Circuit<FqContext>> Cs, const Algo5Options& opts) {
  if (Cs.empty()) throw DomainError("algo5: no circuits");
  const auto& base = Cs[0].ring();
  const std::size_t r = Cs.size(), n = Cs[0].arity();
  for (const auto& C : Cs) {
    if (C.arity() != n) throw MismatchError("algo5: circuit arities differ");
    require_same_ring(base, C.ring(), "algo5");
  }
  IndependenceVerdict v;
  v.method = "algo5";
  const std::string mode_note = opts.mode == Algo5Mode::exhaustive ? "exhaustive" : "support-guided cross-check";
  if (r > n) {
    v.note = "more polynomials than variables";
    return v;
  }
  for (std::size_t i = 0; i < r; ++i)
    if (Cs[i].degree_bound() == 0) {
      v.note = "f" + std::to_string(i + 1) + " is constant";
      return v;
    }

  const auto ap = algo5_parameters(Cs, opts.point_cap);
  const auto field = ap.t == base->degree() ? base : FqContext::create(base->p(), ap.t);
  const auto gr = GrContext::create(field, ap.level + 1);
  const FieldEmbedding emb(base, field);
  std::vector<Circuit<GrContext>> lifted;
  for (const auto& C : Cs) lifted.push_back(C.map_constants(gr, [&](FqElem c) { return gr->lift(emb(c)); }));
  const auto plan = InterpPlan::create(gr, ap.D, opts.point_cap);

  std::uint64_t span_size = 1;  // D^n <= p^t - 1
  for (std::size_t i = 0; i < n; ++i) span_size *= ap.D;
  const auto sets = index_sets(n, r);
  if (opts.mode == Algo5Mode::exhaustive) {
    const mpz_class work = mpz_class(static_cast<unsigned long>(sets.size())) * span_size * plan.order;
    if (work > mpz_class(static_cast<unsigned long>(opts.work_cap)))
      throw CapExceeded("algo5: exhaustive enumeration needs " + work.get_str() + " ring operations");
  }
  std::vector<GrPoly> expanded;
  if (opts.mode == Algo5Mode::support_guided)
    for (const auto& C : Cs) expanded.push_back(lift_poly(C.to_sparse_poly(opts.term_cap), gr));

  // Kronecker point exponents D^i mod (p^t - 1).
  std::vector<std::uint64_t> dpow(n);
  for (std::size_t i = 0; i < n; ++i) dpow[i] = i == 0 ? 1 % plan.order : mulmod(dpow[i - 1], ap.D, plan.order);
  const std::uint64_t guard = r * ap.delta * (checked_pow(base->p(), ap.level) - 1) + r + r * (ap.delta - 1);

  v.level = ap.level;
  v.note = mode_note + "; t = " + std::to_string(ap.t) + ", D = " + std::to_string(ap.D);
  for (const auto& I : sets) {
    const auto wc = wjp_circuit(lifted, I, ap.level);
    const std::uint64_t deg = wc.degree_bound();
    if (deg > guard || deg >= ap.D)
      throw InternalError("algo5: WJP circuit degree " + std::to_string(deg) + " breaks the Kronecker guard");
    std::vector<GrElem> values;
    values.reserve(plan.order);
    std::vector<GrElem> point(n);
    for (std::uint64_t j = 0; j < plan.order; ++j) {
      for (std::size_t i = 0; i < n; ++i) point[i] = plan.xi_powers[mulmod(j, dpow[i], plan.order)];
      values.push_back(wc.evaluate(point));
    }
    auto accept = [&](const ExponentVec& alpha, const GrElem& c) {
      const unsigned thr = *degeneracy_threshold(alpha, base->p(), ap.level, DegeneracyMode::bounded);
      const unsigned val = gr->val_p(c);
      if (val >= thr) return false;
      v.independent = true;
      v.witness = Witness{I, alpha, val, thr};
      return true;
    };
    if (opts.mode == Algo5Mode::exhaustive) {
      ExponentVec alpha(n, 0);
      for (std::uint64_t d = 0; d < span_size; ++d) {
        std::uint64_t rest = d;
        for (std::size_t i = 0; i < n; ++i) alpha[i] = rest % ap.D, rest /= ap.D;
        if (accept(alpha, interp_coeff_from_values(values, d, plan))) return v;
      }
    } else {
      const auto w = wjp(expanded, I, ap.level, opts.term_cap);
      for (const auto& t : w.terms()) {
        const auto c = interp_coeff_from_values(values, kronecker_index(t.exps, ap.D), plan);
        if (!gr->equal(c, t.coeff)) throw InternalError("algo5: interpolated coefficient differs from the expansion");
        if (accept(t.exps, c)) return v;
      }
    }
  }
  return v;
}

}  // namespace wjit
