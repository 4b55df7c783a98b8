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

#ifndef WJIT_CIRCUIT_HPP_
#define WJIT_CIRCUIT_HPP_

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "wjit/error.hpp"
#include "wjit/poly.hpp"
#include "wjit/ring.hpp"

namespace wjit {

enum class GateKind { constant, variable, add, mul };

template <CoeffRing R>
struct Gate {
  GateKind kind;
  typename R::Elem value{};  // constant
  std::size_t var = 0;       // variable, 0-based
  std::size_t lhs = 0, rhs = 0;
};

// Straight-line program: every gate refers only to earlier gates.
template <CoeffRing R>
class Circuit {
 public:
  using Elem = typename R::Elem;
  using RingPtr = std::shared_ptr<const R>;

  Circuit(RingPtr ring, std::size_t arity) : ring_(std::move(ring)), arity_(arity) {}

  const RingPtr& ring() const { return ring_; }
  std::size_t arity() const { return arity_; }
  std::size_t size() const { return gates_.size(); }
  const std::vector<Gate<R>>& gates() const { return gates_; }
  std::size_t output() const {
    if (gates_.empty()) throw DomainError("circuit: no gates");
    return output_;
  }
  void set_output(std::size_t g) {
    check_ref(g);
    output_ = g;
  }

  std::size_t constant(const Elem& c) { return push({GateKind::constant, c, 0, 0, 0}); }
  std::size_t variable(std::size_t j) {
    if (j >= arity_) throw DomainError("circuit: variable index out of range");
    return push({GateKind::variable, ring_->zero(), j, 0, 0});
  }
  std::size_t add(std::size_t a, std::size_t b) {
    check_ref(a), check_ref(b);
    return push({GateKind::add, ring_->zero(), 0, a, b});
  }
  std::size_t mul(std::size_t a, std::size_t b) {
    check_ref(a), check_ref(b);
    return push({GateKind::mul, ring_->zero(), 0, a, b});
  }
  // Repeated-squaring subgraph for g^e.
  std::size_t power(std::size_t g, std::uint64_t e) {
    check_ref(g);
    if (e == 0) return constant(ring_->one());
    std::size_t result = 0;
    bool have = false;
    std::size_t base = g;
    while (e) {
      if (e & 1) {
        result = have ? mul(result, base) : base;
        have = true;
      }
      e >>= 1;
      if (e) base = mul(base, base);
    }
    return result;
  }

  // Evaluates in another ring; constants pass through `coerce`.
  template <CoeffRing R2, class F>
  typename R2::Elem evaluate_in(const R2& ring, std::span<const typename R2::Elem> point, F&& coerce) const {
    if (point.size() != arity_) throw MismatchError("circuit_eval: point arity mismatch");
    std::vector<typename R2::Elem> vals;
    vals.reserve(gates_.size());
    for (const auto& g : gates_) {
      switch (g.kind) {
        case GateKind::constant: vals.push_back(coerce(g.value)); break;
        case GateKind::variable: vals.push_back(point[g.var]); break;
        case GateKind::add: vals.push_back(ring.add(vals[g.lhs], vals[g.rhs])); break;
        case GateKind::mul: vals.push_back(ring.mul(vals[g.lhs], vals[g.rhs])); break;
      }
    }
    return vals.at(output());
  }
  Elem evaluate(std::span<const Elem> point) const {
    return evaluate_in(*ring_, point, [](const Elem& c) { return c; });
  }

  // Equivalent circuit with shared subexpressions merged, constants folded,
  // multiplication by 1 and addition of 0 removed, and dead gates dropped.
  // The degree bound does not increase.
  Circuit compact() const {
    const std::size_t out = output();
    std::vector<bool> live(gates_.size(), false);
    live[out] = true;
    for (std::size_t i = gates_.size(); i-- > 0;)
      if (live[i] && (gates_[i].kind == GateKind::add || gates_[i].kind == GateKind::mul))
        live[gates_[i].lhs] = live[gates_[i].rhs] = true;
    Circuit c(ring_, arity_);
    std::map<std::string, std::size_t> consts;
    std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> ops;
    std::vector<std::size_t> map(gates_.size(), 0);
    auto constant_of = [&](const Elem& v) {
      auto [it, fresh] = consts.try_emplace(ring_->format(v), 0);
      if (fresh) it->second = c.constant(v);
      return it->second;
    };
    auto is_const = [&](std::size_t g) { return c.gates_[g].kind == GateKind::constant; };
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      if (!live[i]) continue;
      const auto& g = gates_[i];
      if (g.kind == GateKind::constant) {
        map[i] = constant_of(g.value);
        continue;
      }
      if (g.kind == GateKind::variable) {
        auto [it, fresh] = ops.try_emplace({0, g.var, 0}, 0);
        if (fresh) it->second = c.variable(g.var);
        map[i] = it->second;
        continue;
      }
      std::size_t a = map[g.lhs], b = map[g.rhs];
      if (a > b) std::swap(a, b);
      const bool is_add = g.kind == GateKind::add;
      if (is_const(a) && is_const(b)) {
        const auto& x = c.gates_[a].value;
        const auto& y = c.gates_[b].value;
        map[i] = constant_of(is_add ? ring_->add(x, y) : ring_->mul(x, y));
        continue;
      }
      if (is_const(a) || is_const(b)) {
        const std::size_t k = is_const(a) ? a : b, other = k == a ? b : a;
        const auto& x = c.gates_[k].value;
        if (is_add ? ring_->is_zero(x) : ring_->equal(x, ring_->one())) {
          map[i] = other;
          continue;
        }
        if (!is_add && ring_->is_zero(x)) {
          map[i] = k;
          continue;
        }
      }
      auto [it, fresh] = ops.try_emplace({is_add ? 1 : 2, a, b}, 0);
      if (fresh) it->second = is_add ? c.add(a, b) : c.mul(a, b);
      map[i] = it->second;
    }
    c.output_ = map[out];
    // Folding can orphan gates; keep only the reachable ones.
    Circuit d(ring_, arity_);
    std::vector<std::size_t> m2(c.gates_.size(), 0);
    std::vector<bool> used(c.gates_.size(), false);
    used[c.output_] = true;
    for (std::size_t i = c.gates_.size(); i-- > 0;)
      if (used[i] && (c.gates_[i].kind == GateKind::add || c.gates_[i].kind == GateKind::mul))
        used[c.gates_[i].lhs] = used[c.gates_[i].rhs] = true;
    for (std::size_t i = 0; i < c.gates_.size(); ++i) {
      if (!used[i]) continue;
      auto g = c.gates_[i];
      g.lhs = m2[g.lhs], g.rhs = m2[g.rhs];
      m2[i] = d.push(std::move(g));
    }
    d.output_ = m2[c.output_];
    return d;
  }

  // var -> 1, const -> 0, add -> max, mul -> sum (saturating).
  std::uint64_t degree_bound() const {
    std::vector<std::uint64_t> d;
    d.reserve(gates_.size());
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    for (const auto& g : gates_) {
      switch (g.kind) {
        case GateKind::constant: d.push_back(0); break;
        case GateKind::variable: d.push_back(1); break;
        case GateKind::add: d.push_back(std::max(d[g.lhs], d[g.rhs])); break;
        case GateKind::mul: d.push_back(d[g.lhs] > kMax - d[g.rhs] ? kMax : d[g.lhs] + d[g.rhs]); break;
      }
    }
    return d.at(output());
  }

  // Forward-mode derivative: appends derivative gates to a copy of this
  // circuit. Known-zero derivatives are tracked to avoid dead gates.
  Circuit derivative(std::size_t j) const {
    if (j >= arity_) throw DomainError("derivative: variable index out of range");
    Circuit c = *this;
    constexpr std::size_t kZero = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> d(gates_.size(), kZero);
    std::size_t one = kZero;
    auto get_one = [&] {
      if (one == kZero) one = c.constant(ring_->one());
      return one;
    };
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      const auto& g = gates_[i];
      switch (g.kind) {
        case GateKind::constant: break;
        case GateKind::variable:
          if (g.var == j) d[i] = get_one();
          break;
        case GateKind::add: {
          const std::size_t a = d[g.lhs], b = d[g.rhs];
          d[i] = a == kZero ? b : b == kZero ? a : c.add(a, b);
          break;
        }
        case GateKind::mul: {
          const std::size_t da = d[g.lhs], db = d[g.rhs];
          std::size_t left = kZero, right = kZero;
          if (da != kZero) left = c.mul(da, g.rhs);
          if (db != kZero) right = c.mul(g.lhs, db);
          d[i] = left == kZero ? right : right == kZero ? left : c.add(left, right);
          break;
        }
      }
    }
    c.output_ = d[output()] == kZero ? c.constant(ring_->zero()) : d[output()];
    return c;
  }

  SparsePoly<R> to_sparse_poly(std::size_t term_cap = kNoTermCap) const {
    std::vector<SparsePoly<R>> vals;
    vals.reserve(gates_.size());
    for (const auto& g : gates_) {
      switch (g.kind) {
        case GateKind::constant: vals.push_back(SparsePoly<R>::constant(ring_, arity_, g.value)); break;
        case GateKind::variable: vals.push_back(SparsePoly<R>::variable(ring_, arity_, g.var)); break;
        case GateKind::add: vals.push_back(vals[g.lhs] + vals[g.rhs]); break;
        case GateKind::mul: vals.push_back(SparsePoly<R>::multiply(vals[g.lhs], vals[g.rhs], term_cap)); break;
      }
      if (vals.back().num_terms() > term_cap)
        throw CapExceeded("circuit expansion exceeds term cap " + std::to_string(term_cap));
    }
    return vals.at(output());
  }

  template <CoeffRing R2, class F>
  Circuit<R2> map_constants(std::shared_ptr<const R2> target, F&& fn) const {
    Circuit<R2> c(target, arity_);
    for (const auto& g : gates_) {
      switch (g.kind) {
        case GateKind::constant: c.constant(fn(g.value)); break;
        case GateKind::variable: c.variable(g.var); break;
        case GateKind::add: c.add(g.lhs, g.rhs); break;
        case GateKind::mul: c.mul(g.lhs, g.rhs); break;
      }
    }
    if (!gates_.empty()) c.set_output(output_);
    return c;
  }

  // Sum of monomials, powers by repeated squaring.
  static Circuit from_poly(const SparsePoly<R>& f) {
    Circuit c(f.ring(), f.arity());
    std::vector<std::size_t> vars;
    for (std::size_t j = 0; j < f.arity(); ++j) vars.push_back(c.variable(j));
    std::size_t acc = c.constant(f.ring()->zero());
    for (const auto& t : f.terms()) {
      std::size_t term = c.constant(t.coeff);
      for (std::size_t j = 0; j < f.arity(); ++j)
        if (t.exps[j]) term = c.mul(term, c.power(vars[j], t.exps[j]));
      acc = c.add(acc, term);
    }
    c.set_output(acc);
    return c;
  }

 private:
  std::size_t push(Gate<R> g) {
    gates_.push_back(std::move(g));
    output_ = gates_.size() - 1;
    return output_;
  }
  void check_ref(std::size_t g) const {
    if (g >= gates_.size()) throw DomainError("circuit: reference to an undefined gate");
  }

  RingPtr ring_;
  std::size_t arity_;
  std::vector<Gate<R>> gates_;
  std::size_t output_ = 0;
};

// One gate per line: `n<i> = const <c>`, `n<i> = var <j>` (1-based),
// `n<i> = add n<a> n<b>`, `n<i> = mul n<a> n<b>`; then `out n<i>`. Blank
// lines and '#' comments are ignored.
template <CoeffRing R>
Circuit<R> parse_circuit(std::shared_ptr<const R> ring, std::string_view text, std::size_t arity) {
  Circuit<R> c(ring, arity);
  std::map<std::string, std::size_t> names;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool have_out = false;
  auto ref = [&](const std::string& name) {
    auto it = names.find(name);
    if (it == names.end()) throw ParseError("undefined gate '" + name + "'", lineno);
    return it->second;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (have_out) throw ParseError("gate after 'out' line", lineno);
    if (first == "out") {
      std::string name;
      if (!(ls >> name)) throw ParseError("'out' needs a gate name", lineno);
      c.set_output(ref(name));
      have_out = true;
      continue;
    }
    std::string eq, op;
    if (!(ls >> eq >> op) || eq != "=") throw ParseError("expected '<name> = <op> ...'", lineno);
    if (names.count(first)) throw ParseError("gate '" + first + "' defined twice", lineno);
    std::size_t id = 0;
    try {
      if (op == "const") {
        std::string rest, piece;
        while (ls >> piece) rest += piece;
        if (rest.empty()) throw ParseError("const needs a value", lineno);
        id = c.constant(ring->parse(rest));
      } else if (op == "var") {
        std::size_t j = 0;
        if (!(ls >> j) || j == 0) throw ParseError("var needs a 1-based index", lineno);
        id = c.variable(j - 1);
      } else if (op == "add" || op == "mul") {
        std::string a, b;
        if (!(ls >> a >> b)) throw ParseError(op + " needs two operands", lineno);
        id = op == "add" ? c.add(ref(a), ref(b)) : c.mul(ref(a), ref(b));
      } else {
        throw ParseError("unknown gate '" + op + "'", lineno);
      }
    } catch (const ParseError& e) {
      if (e.line()) throw;
      throw ParseError(e.what(), lineno);
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("trailing input '" + extra + "'", lineno);
    names.emplace(first, id);
  }
  if (!have_out) throw ParseError("missing 'out' line", lineno);
  return c;
}

template <CoeffRing R>
std::string format_circuit(const Circuit<R>& c) {
  std::ostringstream os;
  const auto& gates = c.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    os << 'n' << i << " = ";
    switch (g.kind) {
      case GateKind::constant: os << "const " << c.ring()->format(g.value); break;
      case GateKind::variable: os << "var " << g.var + 1; break;
      case GateKind::add: os << "add n" << g.lhs << " n" << g.rhs; break;
      case GateKind::mul: os << "mul n" << g.lhs << " n" << g.rhs; break;
    }
    os << '\n';
  }
  os << "out n" << c.output() << '\n';
  return os.str();
}

}  // namespace wjit

#endif  // WJIT_CIRCUIT_HPP_
