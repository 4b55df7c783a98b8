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

#ifndef WJIT_WITT_HPP_
#define WJIT_WITT_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <json.hpp>

#include "wjit/error.hpp"
#include "wjit/fq.hpp"
#include "wjit/galois_ring.hpp"
#include "wjit/int_ring.hpp"
#include "wjit/numtheory.hpp"
#include "wjit/poly.hpp"
#include "wjit/ring.hpp"

namespace wjit {

inline constexpr unsigned kDefaultWittLevelCap = 4;
// Automatic backend: ghost lift once p^(length-1) exceeds this.
inline constexpr std::uint64_t kWittPolyWeightCap = 25;

using IntPoly = SparsePoly<IntegerRing>;

// S_i and P_i over Z in the variables x_0..x_i, y_0..y_i (in that order).
struct UniversalWittPolys {
  std::uint64_t p;
  unsigned level;
  IntPoly sum;
  IntPoly product;
};

// Derived by ghost-component inversion and cached per (p, level). Throws
// CapExceeded above level_cap.
std::shared_ptr<const UniversalWittPolys> universal_witt_polys(std::uint64_t p, unsigned level,
                                                               unsigned level_cap = kDefaultWittLevelCap);

// Ghost component w_n(a) = sum_{j<=n} p^j a_j^{p^(n-j)} of the variables
// first..first+n of a polynomial ring of the given arity.
IntPoly ghost_polynomial(std::uint64_t p, unsigned n, std::size_t arity, std::size_t first);

template <CoeffRing R>
struct WittVec {
  std::vector<typename R::Elem> coords;
};

enum class WittBackend {
  automatic,   // universal polynomials for small p^(length-1), ghost lift above (F_q only)
  universal,
  ghost_lift,  // F_q coefficients only
};

// W_len(A) for a commutative ring A in which the prime p is the residue
// characteristic of interest (A of characteristic p for Frobenius).
template <CoeffRing R>
class WittRing {
 public:
  using Base = R;
  using BaseElem = typename R::Elem;
  using Elem = WittVec<R>;

  static std::shared_ptr<const WittRing> create(std::shared_ptr<const R> base, std::uint64_t p, unsigned length,
                                                WittBackend backend = WittBackend::automatic,
                                                unsigned level_cap = kDefaultWittLevelCap) {
    if (!base) throw DomainError("witt: null coefficient ring");
    if (!is_prime(p)) throw DomainError("witt: p not prime");
    if (length == 0) throw DomainError("witt: length must be >= 1");
    return std::shared_ptr<const WittRing>(new WittRing(std::move(base), p, length, backend, level_cap));
  }

  const std::shared_ptr<const R>& base() const { return base_; }
  std::uint64_t p() const { return p_; }
  unsigned length() const { return len_; }
  bool uses_ghost_lift() const { return ghost_; }
  bool same_as(const WittRing& o) const {
    return p_ == o.p_ && len_ == o.len_ && (base_ == o.base_ || base_->same_as(*o.base_));
  }
  std::uint64_t characteristic() const {
    return base_->characteristic() == p_ ? checked_pow(p_, len_) : 0;
  }

  Elem zero() const { return Elem{std::vector<BaseElem>(len_, base_->zero())}; }
  Elem one() const { return teichmuller(base_->one()); }
  Elem teichmuller(const BaseElem& a) const {
    Elem r = zero();
    r.coords[0] = a;
    return r;
  }
  Elem from_coords(std::vector<BaseElem> cs) const {
    if (cs.size() != len_) throw MismatchError("witt: coordinate count does not match length");
    return Elem{std::move(cs)};
  }

  Elem add(const Elem& a, const Elem& b) const {
    check(a), check(b);
    if (ghost_) return ghost_op(a, b, false);
    return universal_op(sum_, a, b);
  }
  Elem mul(const Elem& a, const Elem& b) const {
    check(a), check(b);
    if (ghost_) return ghost_op(a, b, true);
    return universal_op(prod_, a, b);
  }
  Elem neg(const Elem& a) const {
    check(a);
    if (ghost_) return ghost_op(minus_one(), a, true);
    // b_i is forced by S_i(a, b) = a_i + b_i + (terms in lower coordinates) = 0.
    Elem b = zero();
    for (unsigned i = 0; i < len_; ++i) {
      Elem a0 = a;
      a0.coords[i] = base_->zero();
      const BaseElem rest = eval_level(sum_[i], a0, b, i);
      b.coords[i] = base_->neg(base_->add(a.coords[i], rest));
    }
    return b;
  }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

  bool is_zero(const Elem& a) const {
    for (const auto& c : a.coords)
      if (!base_->is_zero(c)) return false;
    return true;
  }
  bool equal(const Elem& a, const Elem& b) const {
    if (a.coords.size() != b.coords.size()) return false;
    for (std::size_t i = 0; i < a.coords.size(); ++i)
      if (!base_->equal(a.coords[i], b.coords[i])) return false;
    return true;
  }

  Elem from_bigint(const mpz_class& k) const {
    mpz_class m = abs(k);
    // Only the residue mod p^len matters once the base has characteristic p.
    if (const std::uint64_t c = characteristic()) m %= mpz_class(std::to_string(c));
    Elem r = zero(), acc = one();
    const std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
      if (mpz_tstbit(m.get_mpz_t(), i)) r = add(r, acc);
      if (i + 1 < bits) acc = add(acc, acc);
    }
    return k < 0 ? neg(r) : r;
  }
  Elem from_int(std::int64_t k) const { return from_bigint(mpz_class(static_cast<long>(k))); }

  std::string format(const Elem& a) const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < a.coords.size(); ++i) os << (i ? "," : "") << base_->format(a.coords[i]);
    os << ')';
    return os.str();
  }
  Elem parse(std::string_view text) const {
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ParseError("empty Witt vector");
    if (s.front() != '(') return from_bigint(IntegerRing::instance()->parse(s));
    if (s.back() != ')') throw ParseError("unterminated Witt vector '" + s + "'");
    std::vector<BaseElem> cs;
    const std::string body = s.substr(1, s.size() - 2);
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      const char ch = i < body.size() ? body[i] : ',';
      if (ch == '[' || ch == '(') ++depth;
      if (ch == ']' || ch == ')') --depth;
      if (ch == ',' && depth == 0) {
        cs.push_back(base_->parse(body.substr(start, i - start)));
        start = i + 1;
      }
    }
    return from_coords(std::move(cs));
  }
  nlohmann::json to_json(const Elem& a) const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : a.coords) j.push_back(base_->to_json(c));
    return j;
  }
  Elem from_json(const nlohmann::json& j) const {
    if (!j.is_array()) throw ParseError("Witt vector JSON must be an array");
    std::vector<BaseElem> cs;
    for (const auto& c : j) cs.push_back(base_->from_json(c));
    return from_coords(std::move(cs));
  }

  // (a_0, ..., a_{len-1}) -> (0, a_0, ..., a_{len-2}) inside W_len.
  Elem verschiebung(const Elem& a) const {
    check(a);
    Elem r = zero();
    for (unsigned i = 1; i < len_; ++i) r.coords[i] = a.coords[i - 1];
    return r;
  }
  Elem frobenius(const Elem& a) const {
    check(a);
    if (base_->characteristic() != p_) throw DomainError("witt frobenius: coefficient ring is not of characteristic p");
    Elem r = a;
    for (auto& c : r.coords) c = ring_pow(*base_, c, p_);
    return r;
  }

 private:
  struct Compiled {
    std::vector<std::pair<BaseElem, ExponentVec>> terms;
  };

  WittRing(std::shared_ptr<const R> base, std::uint64_t p, unsigned length, WittBackend backend, unsigned cap)
      : base_(std::move(base)), p_(p), len_(length) {
    constexpr bool is_fq = std::is_same_v<R, FqContext>;
    if (backend == WittBackend::ghost_lift && !is_fq)
      throw DomainError("witt: ghost-lift arithmetic needs finite-field coefficients");
    if (backend == WittBackend::automatic && is_fq) {
      std::uint64_t weight = 1;
      for (unsigned i = 1; i < length && weight <= kWittPolyWeightCap; ++i) weight *= p;
      ghost_ = length - 1 > cap || weight > kWittPolyWeightCap;
    } else {
      ghost_ = backend == WittBackend::ghost_lift;
    }
    if constexpr (is_fq) {
      if (base_->p() != p_) throw DomainError("witt: p differs from the field characteristic");
      if (ghost_) gr_ = GrContext::create(base_, len_);
    }
    if (ghost_) return;
    for (unsigned i = 0; i < len_; ++i) {
      const auto polys = universal_witt_polys(p_, i, cap);
      sum_.push_back(compile(polys->sum));
      prod_.push_back(compile(polys->product));
    }
  }

  void check(const Elem& a) const {
    if (a.coords.size() != len_) throw MismatchError("witt: vector length does not match ring");
  }

  Compiled compile(const IntPoly& f) const {
    Compiled c;
    for (const auto& t : f.terms()) {
      BaseElem coeff = base_->from_bigint(t.coeff);
      if (!base_->is_zero(coeff)) c.terms.emplace_back(std::move(coeff), t.exps);
    }
    return c;
  }

  // Level-i polynomial at (a_0..a_i, b_0..b_i).
  BaseElem eval_level(const Compiled& f, const Elem& a, const Elem& b, unsigned i) const {
    auto value = [&](std::size_t var) -> const BaseElem& { return var <= i ? a.coords[var] : b.coords[var - i - 1]; };
    boost::container::small_vector<boost::container::small_vector<BaseElem, 8>, 8> powers(2 * (i + 1));
    auto power = [&](std::size_t var, Exponent e) -> const BaseElem& {
      auto& tab = powers[var];
      if (tab.empty()) tab.push_back(base_->one());
      while (tab.size() <= e) tab.push_back(base_->mul(tab.back(), value(var)));
      return tab[e];
    };
    BaseElem acc = base_->zero();
    for (const auto& [coeff, exps] : f.terms) {
      BaseElem term = coeff;
      for (std::size_t v = 0; v < exps.size() && !base_->is_zero(term); ++v)
        if (exps[v]) term = base_->mul(term, power(v, exps[v]));
      acc = base_->add(acc, term);
    }
    return acc;
  }

  Elem universal_op(const std::vector<Compiled>& polys, const Elem& a, const Elem& b) const {
    Elem r = zero();
    // S_0 = x_0 + y_0 and P_0 = x_0 y_0.
    r.coords[0] = &polys == &sum_ ? base_->add(a.coords[0], b.coords[0]) : base_->mul(a.coords[0], b.coords[0]);
    for (unsigned i = 1; i < len_; ++i) r.coords[i] = eval_level(polys[i], a, b, i);
    return r;
  }

  // Coordinates of -1, by solving w_n(b) = -1 for every n.
  const Elem& minus_one() const {
    if constexpr (std::is_same_v<R, FqContext>) {
      std::call_once(minus_one_flag_, [this] {
        Elem b = zero();
        const auto& g = *gr_;
        for (unsigned n = 0; n < len_; ++n) {
          GrElem num = g.from_int(-1);
          for (unsigned j = 0; j < n; ++j)
            num = g.sub(num, g.scale(g.pow(g.lift(b.coords[j]), checked_pow(p_, n - j)), checked_pow(p_, j)));
          b.coords[n] = g.reduce_mod_p(g.div_p_pow(num, n));
        }
        minus_one_ = b;
      });
      return minus_one_;
    } else {
      throw InternalError("witt: ghost lift unavailable");
    }
  }

  // S_n (or P_n) mod p from the ghost identity over the Galois ring of
  // precision len: only residues of lower-level values are needed since
  // x = y mod p implies x^(p^k) = y^(p^k) mod p^(k+1).
  Elem ghost_op(const Elem& a, const Elem& b, bool multiply) const {
    if constexpr (std::is_same_v<R, FqContext>) {
      const auto& g = *gr_;
      // pa[j] = lift(a_j)^(p^(n-j)), likewise pb and pr for b and the result.
      std::vector<GrElem> pa, pb, pr;
      pa.reserve(len_), pb.reserve(len_), pr.reserve(len_);
      Elem r = zero();
      for (unsigned n = 0; n < len_; ++n) {
        for (unsigned j = 0; j < n; ++j) {
          pa[j] = g.pow(pa[j], p_);
          pb[j] = g.pow(pb[j], p_);
          pr[j] = g.pow(pr[j], p_);
        }
        pa.push_back(g.lift(a.coords[n]));
        pb.push_back(g.lift(b.coords[n]));
        GrElem wa = g.zero(), wb = g.zero();
        for (unsigned j = 0; j <= n; ++j) {
          const std::uint64_t s = checked_pow(p_, j);
          wa = g.add(wa, g.scale(pa[j], s));
          wb = g.add(wb, g.scale(pb[j], s));
        }
        GrElem num = multiply ? g.mul(wa, wb) : g.add(wa, wb);
        for (unsigned j = 0; j < n; ++j) num = g.sub(num, g.scale(pr[j], checked_pow(p_, j)));
        if (g.val_p(num) < n) throw InternalError("witt: ghost numerator not divisible by p^n");
        r.coords[n] = g.reduce_mod_p(g.div_p_pow(num, n));
        pr.push_back(g.lift(r.coords[n]));
      }
      return r;
    } else {
      throw InternalError("witt: ghost lift unavailable");
    }
  }

  std::shared_ptr<const R> base_;
  std::uint64_t p_;
  unsigned len_;
  bool ghost_ = false;
  std::vector<Compiled> sum_, prod_;
  GrPtr gr_;
  mutable std::once_flag minus_one_flag_;
  mutable Elem minus_one_;
};

template <CoeffRing R>
using WittPtr = std::shared_ptr<const WittRing<R>>;

// W_len -> W_{len+1}, (a_0, ...) -> (0, a_0, ...).
template <CoeffRing R>
WittVec<R> verschiebung_extend(const WittRing<R>& target, const WittVec<R>& a) {
  if (a.coords.size() + 1 != target.length()) throw MismatchError("verschiebung: target length must be one more");
  auto r = target.zero();
  for (std::size_t i = 0; i < a.coords.size(); ++i) r.coords[i + 1] = a.coords[i];
  return r;
}

// W_len -> W_{len-1}, dropping the last coordinate.
template <CoeffRing R>
WittVec<R> restrict_witt(const WittRing<R>& target, const WittVec<R>& a) {
  if (a.coords.size() != target.length() + 1) throw MismatchError("restrict: target length must be one less");
  auto r = a;
  r.coords.pop_back();
  return r;
}

// sum_i p^i [a_i^(p^-i)] in the Galois ring of precision len.
GrElem witt_to_galois(const WittRing<FqContext>& w, const WittVec<FqContext>& a, const GrContext& gr);
WittVec<FqContext> galois_to_witt(const WittRing<FqContext>& w, const GrElem& z, const GrContext& gr);

}  // namespace wjit

#endif  // WJIT_WITT_HPP_
