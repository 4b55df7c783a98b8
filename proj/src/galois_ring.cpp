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

#include "wjit/galois_ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "wjit/error.hpp"
#include "wjit/numtheory.hpp"

namespace wjit {

GrContext::GrContext(FqPtr base, unsigned m)
    : base_(std::move(base)), m_(m), pm_(checked_pow(base_->p(), m)) {
  modulus_ = base_->modulus();  // entries already in [0, p) subset of Z/p^m
}

std::shared_ptr<const GrContext> GrContext::create(FqPtr base, unsigned m) {
  if (!base) throw DomainError("gr_context: null base field");
  if (m == 0) throw DomainError("gr_context: precision must be >= 1");
  if (checked_pow(base->p(), m) > (std::uint64_t{1} << 62))
    throw CapExceeded("gr_context: p^m exceeds 62 bits");
  std::shared_ptr<GrContext> ctx(new GrContext(std::move(base), m));
  ctx->xi_ = ctx->teichmuller(ctx->base_->generator());

  const std::uint64_t order = ctx->base_->order() - 1;
  const GrElem one = ctx->one();
  if (!(ctx->pow(ctx->xi_, order) == one))
    throw InternalError("gr_context: xi^(p^t-1) != 1");
  for (auto [r, e] : factorize(order))
    if (ctx->pow(ctx->xi_, order / r) == one)
      throw InternalError("gr_context: xi is not a primitive root of unity");
  if (!ctx->base_->equal(ctx->reduce_mod_p(ctx->xi_), ctx->base_->generator()))
    throw InternalError("gr_context: xi does not reduce to the generator");
  return ctx;
}

bool GrContext::same_as(const GrContext& other) const {
  return m_ == other.m_ && base_->same_as(*other.base_);
}

GrElem GrContext::zero() const {
  GrElem r;
  r.c.assign(degree(), 0);
  return r;
}

GrElem GrContext::one() const {
  GrElem r = zero();
  r.c[0] = 1 % pm_;
  return r;
}

GrElem GrContext::add(const GrElem& a, const GrElem& b) const {
  GrElem r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    r.c[i] += b.c[i];
    if (r.c[i] >= pm_) r.c[i] -= pm_;
  }
  return r;
}

GrElem GrContext::neg(const GrElem& a) const {
  GrElem r = a;
  for (auto& x : r.c) x = x ? pm_ - x : 0;
  return r;
}

GrElem GrContext::sub(const GrElem& a, const GrElem& b) const {
  GrElem r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = r.c[i] >= b.c[i] ? r.c[i] - b.c[i] : r.c[i] + pm_ - b.c[i];
  return r;
}

GrElem GrContext::mul(const GrElem& a, const GrElem& b) const {
  const unsigned t = degree();
  if (t == 1) {
    GrElem r;
    r.c.assign(1, mulmod(a.c[0], b.c[0], pm_));
    return r;
  }
  if (pm_ < (std::uint64_t{1} << 24) && 2 * t * (pm_ - 1) * (pm_ - 1) < (std::uint64_t{1} << 63)) {
    // Every slot receives at most 2t terms below pm^2: no overflow in 64 bits.
    boost::container::small_vector<std::uint64_t, 64> acc(2 * t - 1, 0);
    for (unsigned i = 0; i < t; ++i) {
      if (!a.c[i]) continue;
      for (unsigned j = 0; j < t; ++j) acc[i + j] += a.c[i] * b.c[j];
    }
    for (unsigned k = 2 * t - 2; k >= t; --k) {
      const std::uint64_t c = acc[k] % pm_;
      if (!c) continue;
      for (unsigned i = 0; i < t; ++i)
        if (modulus_[i]) acc[k - t + i] += c * (pm_ - modulus_[i]);
    }
    GrElem r;
    r.c.resize(t);
    for (unsigned i = 0; i < t; ++i) r.c[i] = acc[i] % pm_;
    return r;
  }
  boost::container::small_vector<unsigned __int128, 64> prod(2 * t - 1, 0);
  // Below 2^32 the unreduced sums fit in 128 bits and reduce with 64-bit division.
  const bool lazy = pm_ < (std::uint64_t{1} << 32) && t < (1u << 20);
  const std::uint64_t two64 = lazy ? static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) % pm_) : 0;
  auto reduce = [&](unsigned __int128 x) -> std::uint64_t {
    if (!lazy) return static_cast<std::uint64_t>(x % pm_);
    const std::uint64_t hi = static_cast<std::uint64_t>(x >> 64) % pm_, lo = static_cast<std::uint64_t>(x) % pm_;
    return (hi * two64 % pm_ + lo) % pm_;
  };
  for (unsigned i = 0; i < t; ++i) {
    if (!a.c[i]) continue;
    const std::uint64_t ai = a.c[i];
    if (lazy) {
      for (unsigned j = 0; j < t; ++j) prod[i + j] += ai * b.c[j];
    } else {
      for (unsigned j = 0; j < t; ++j)
        prod[i + j] = (prod[i + j] + static_cast<unsigned __int128>(ai) * b.c[j]) % pm_;
    }
  }
  for (unsigned k = 2 * t - 2; k >= t; --k) {
    const std::uint64_t c = reduce(prod[k]);
    if (!c) continue;
    // x^t = -(H_0 + ... + H_{t-1} x^{t-1})
    for (unsigned i = 0; i < t; ++i) {
      if (!modulus_[i]) continue;
      const std::uint64_t sub = lazy ? c * (pm_ - modulus_[i]) : mulmod(c, pm_ - modulus_[i], pm_);
      prod[k - t + i] = lazy ? prod[k - t + i] + sub : (prod[k - t + i] + sub) % pm_;
    }
  }
  for (unsigned i = 0; i < t; ++i) prod[i] = reduce(prod[i]);
  GrElem r;
  r.c.resize(t);
  for (unsigned i = 0; i < t; ++i) r.c[i] = static_cast<std::uint64_t>(prod[i]);
  return r;
}

GrElem GrContext::pow(const GrElem& a, std::uint64_t e) const {
  GrElem r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

GrElem GrContext::pow(const GrElem& a, const mpz_class& e) const {
  GrElem r = one(), b = a;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mul(r, r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, b);
  }
  return r;
}

bool GrContext::is_zero(const GrElem& a) const {
  return std::all_of(a.c.begin(), a.c.end(), [](std::uint64_t x) { return x == 0; });
}

bool GrContext::is_unit(const GrElem& a) const {
  return !base_->is_zero(reduce_mod_p(a));
}

GrElem GrContext::unit_inv(const GrElem& a) const {
  const FqElem abar = reduce_mod_p(a);
  if (base_->is_zero(abar)) throw DomainError("gr: inverting a non-unit");
  GrElem b = lift(base_->inv(abar));
  const GrElem two = from_int(2);
  // Newton iteration doubles the p-adic precision each round.
  for (unsigned prec = 1; prec < m_; prec *= 2) b = mul(b, sub(two, mul(a, b)));
  if (!(mul(a, b) == one())) throw InternalError("gr: unit inverse check failed");
  return b;
}

FqElem GrContext::reduce_mod_p(const GrElem& a) const {
  std::vector<std::uint64_t> cs(a.c.begin(), a.c.end());
  for (auto& x : cs) x %= p();
  return base_->from_coords(cs);
}

GrElem GrContext::lift(FqElem a) const {
  const auto cs = base_->coords(a);
  GrElem r;
  r.c.assign(cs.begin(), cs.end());
  return r;
}

GrElem GrContext::teichmuller(FqElem a) const {
  GrElem z = lift(a);
  const std::uint64_t q = base_->order();
  for (unsigned i = 1; i < m_; ++i) z = pow(z, q);
  return z;
}

unsigned GrContext::val_p(const GrElem& a) const {
  unsigned v = m_;
  for (std::uint64_t x : a.c)
    if (x) v = std::min<unsigned>(v, vp(x, p()));
  return v;
}

GrElem GrContext::div_p_pow(const GrElem& a, unsigned k) const {
  if (val_p(a) < k) throw DomainError("gr: element not divisible by p^k");
  const std::uint64_t pk = checked_pow(p(), k);
  GrElem r = a;
  for (auto& x : r.c) x /= pk;
  return r;
}

GrElem GrContext::scale(const GrElem& a, std::uint64_t k) const {
  GrElem r = a;
  k %= pm_;
  for (auto& x : r.c) x = mulmod(x, k, pm_);
  return r;
}

GrElem GrContext::from_int(std::int64_t k) const {
  GrElem r = zero();
  const auto m = static_cast<__int128>(pm_);
  __int128 v = static_cast<__int128>(k) % m;
  if (v < 0) v += m;
  r.c[0] = static_cast<std::uint64_t>(v);
  return r;
}

GrElem GrContext::from_bigint(const mpz_class& k) const {
  GrElem r = zero();
  mpz_class v;
  mpz_fdiv_r_ui(v.get_mpz_t(), k.get_mpz_t(), pm_);
  r.c[0] = v.get_ui();
  return r;
}

GrElem GrContext::from_coords(std::vector<std::uint64_t> cs) const {
  if (cs.size() > degree()) throw DomainError("gr: too many coordinates");
  cs.resize(degree(), 0);
  GrElem r;
  for (auto x : cs) r.c.push_back(x % pm_);
  return r;
}

std::string GrContext::format(const GrElem& a) const {
  if (degree() == 1) return std::to_string(a.c[0]);
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.c.size(); ++i) os << (i ? "," : "") << a.c[i];
  os << ']';
  return os.str();
}

GrElem GrContext::parse(std::string_view text) const {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty ring element");
  try {
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError("unterminated coordinate list '" + s + "'");
      std::vector<std::uint64_t> cs;
      std::stringstream ss(s.substr(1, s.size() - 2));
      std::string item;
      while (std::getline(ss, item, ',')) cs.push_back(from_int(std::stoll(item)).c[0]);
      return from_coords(std::move(cs));
    }
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw ParseError("bad ring element '" + s + "'");
    return from_int(v);
  } catch (const std::invalid_argument&) {
    throw ParseError("bad ring element '" + s + "'");
  } catch (const std::out_of_range&) {
    throw ParseError("ring element out of range '" + s + "'");
  }
}

nlohmann::json GrContext::to_json(const GrElem& a) const {
  return std::vector<std::uint64_t>(a.c.begin(), a.c.end());
}

GrElem GrContext::from_json(const nlohmann::json& j) const {
  if (j.is_number_integer()) return from_int(j.get<std::int64_t>());
  if (!j.is_array()) throw ParseError("ring element JSON must be an array");
  std::vector<std::uint64_t> cs;
  for (const auto& c : j) cs.push_back(from_int(c.get<std::int64_t>()).c[0]);
  return from_coords(std::move(cs));
}

}  // namespace wjit
