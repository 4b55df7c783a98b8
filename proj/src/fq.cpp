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

#include "wjit/fq.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "wjit/error.hpp"
#include "wjit/numtheory.hpp"

namespace wjit {
namespace {

using Poly = std::vector<std::uint64_t>;  // over F_p, low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = powmod(m.back(), p - 2, p);
  while (a.size() > dm) {
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  return r;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = poly_mod(poly_mul(r, base, p), m, p);
    e >>= 1;
    if (e) base = poly_mod(poly_mul(base, base, p), m, p);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

bool poly_is_one(const Poly& a) { return a.size() == 1 && a[0] == 1; }

bool is_irreducible(const Poly& m, std::uint64_t p) {
  const unsigned t = static_cast<unsigned>(m.size() - 1);
  if (t == 1) return true;
  const Poly x{0, 1};
  const std::uint64_t q = checked_pow(p, t);
  if (!poly_sub(poly_powmod(x, q, m, p), x, p).empty()) return false;
  for (auto [r, e] : factorize(t)) {
    const Poly xq = poly_powmod(x, checked_pow(p, t / static_cast<unsigned>(r)), m, p);
    if (!poly_is_one(poly_gcd(m, poly_sub(xq, x, p), p))) return false;
  }
  return true;
}

bool x_is_primitive(const Poly& m, std::uint64_t p, std::uint64_t q,
                    const std::vector<std::pair<std::uint64_t, unsigned>>& fac) {
  const Poly x{0, 1};
  if (!poly_is_one(poly_powmod(x, q - 1, m, p))) return false;
  for (auto [r, e] : fac)
    if (poly_is_one(poly_powmod(x, (q - 1) / r, m, p))) return false;
  return true;
}

}  // namespace

FqContext::FqContext(std::uint64_t p, std::vector<std::uint64_t> modulus)
    : p_(p),
      t_(static_cast<unsigned>(modulus.size() - 1)),
      q_(checked_pow(p, static_cast<unsigned>(modulus.size() - 1))),
      modulus_(std::move(modulus)) {
  digit_weight_.resize(t_);
  std::uint64_t w = 1;
  for (unsigned i = 0; i < t_; ++i, w *= p_) digit_weight_[i] = w;
}

std::shared_ptr<const FqContext> FqContext::create(std::uint64_t p, unsigned t) {
  if (!is_prime(p)) throw DomainError("fq_context: " + std::to_string(p) + " is not prime");
  if (t == 0) throw DomainError("fq_context: extension degree must be >= 1");
  const std::uint64_t q = checked_pow(p, t);
  if (q > kMaxOrder) throw CapExceeded("fq_context: field order exceeds cap");
  std::shared_ptr<FqContext> ctx;
  if (t == 1) {
    ctx.reset(new FqContext(p, {0, 1}));
    ctx->init_generator(false);
    return ctx;
  }
  const auto fac = factorize(q - 1);
  for (std::uint64_t code = 0; code < q; ++code) {
    Poly m(t + 1, 0);
    std::uint64_t c = code;
    for (unsigned i = 0; i < t; ++i, c /= p) m[i] = c % p;
    m[t] = 1;
    if (m[0] == 0) continue;
    if (!x_is_primitive(m, p, q, fac)) continue;
    ctx.reset(new FqContext(p, std::move(m)));
    ctx->init_generator(true);
    return ctx;
  }
  throw InternalError("fq_context: no primitive polynomial found");
}

std::shared_ptr<const FqContext> FqContext::with_modulus(
    std::uint64_t p, std::vector<std::uint64_t> modulus) {
  if (!is_prime(p)) throw DomainError("fq_context: " + std::to_string(p) + " is not prime");
  if (modulus.size() < 2 || modulus.back() != 1)
    throw DomainError("fq_context: modulus must be monic of degree >= 1");
  for (auto& c : modulus)
    if (c >= p) throw DomainError("fq_context: modulus coefficient out of range");
  if (!is_irreducible(modulus, p))
    throw DomainError("fq_context: modulus is not irreducible");
  if (checked_pow(p, static_cast<unsigned>(modulus.size() - 1)) > kMaxOrder)
    throw CapExceeded("fq_context: field order exceeds cap");
  std::shared_ptr<FqContext> ctx(new FqContext(p, std::move(modulus)));
  ctx->init_generator(ctx->t_ >= 2);
  return ctx;
}

void FqContext::init_generator(bool prefer_x) {
  generator_ = FqElem{0};
  if (prefer_x && t_ >= 2 && is_primitive(FqElem{p_})) {
    generator_ = FqElem{p_};
  } else {
    for (std::uint64_t code = 1; code < q_; ++code) {
      if (is_primitive(FqElem{code})) {
        generator_ = FqElem{code};
        break;
      }
    }
    if (q_ == 2) generator_ = FqElem{1};
  }
  if (generator_.code == 0) throw InternalError("fq_context: no generator");
  if (q_ <= kTableLimit) {
    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    FqElem g{1};
    for (std::uint64_t i = 0; i + 1 < q_; ++i) {
      exp_[i] = static_cast<std::uint32_t>(g.code);
      log_[g.code] = static_cast<std::uint32_t>(i);
      g = slow_mul(g, generator_);
    }
    if (g.code != 1) throw InternalError("fq_context: generator order check failed");
  }
}

bool FqContext::same_as(const FqContext& other) const {
  return p_ == other.p_ && modulus_ == other.modulus_ &&
         generator_ == other.generator_;
}

std::vector<std::uint64_t> FqContext::coords(FqElem a) const {
  std::vector<std::uint64_t> out(t_);
  std::uint64_t c = a.code;
  for (unsigned i = 0; i < t_; ++i, c /= p_) out[i] = c % p_;
  return out;
}

FqElem FqContext::from_coords(std::span<const std::uint64_t> cs) const {
  if (cs.size() > t_) throw DomainError("fq: too many coordinates");
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) code += (cs[i] % p_) * digit_weight_[i];
  return {code};
}

FqElem FqContext::from_code(std::uint64_t code) const {
  if (code >= q_) throw DomainError("fq: element code out of range");
  return {code};
}

FqElem FqContext::add(FqElem a, FqElem b) const {
  if (p_ == 2) return {a.code ^ b.code};
  if (t_ == 1) return {(a.code + b.code) % p_};
  std::uint64_t r = 0, x = a.code, y = b.code;
  for (unsigned i = 0; i < t_; ++i, x /= p_, y /= p_)
    r += ((x % p_ + y % p_) % p_) * digit_weight_[i];
  return {r};
}

FqElem FqContext::neg(FqElem a) const {
  if (p_ == 2) return a;
  if (t_ == 1) return {(p_ - a.code) % p_};
  std::uint64_t r = 0, x = a.code;
  for (unsigned i = 0; i < t_; ++i, x /= p_) r += ((p_ - x % p_) % p_) * digit_weight_[i];
  return {r};
}

FqElem FqContext::sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

FqElem FqContext::slow_mul(FqElem a, FqElem b) const {
  if (t_ == 1) return {mulmod(a.code, b.code, p_)};
  Poly pa = coords(a), pb = coords(b);
  return from_coords(poly_mulmod(pa, pb));
}

std::vector<std::uint64_t> FqContext::poly_mulmod(
    std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) const {
  Poly r = poly_mod(poly_mul(Poly(a.begin(), a.end()), Poly(b.begin(), b.end()), p_),
                    modulus_, p_);
  r.resize(t_, 0);
  return r;
}

FqElem FqContext::mul(FqElem a, FqElem b) const {
  if (a.code == 0 || b.code == 0) return {0};
  if (!exp_.empty()) {
    std::uint64_t s = std::uint64_t{log_[a.code]} + log_[b.code];
    if (s >= q_ - 1) s -= q_ - 1;
    return {exp_[s]};
  }
  return slow_mul(a, b);
}

FqElem FqContext::slow_pow(FqElem a, std::uint64_t e) const {
  FqElem r{1};
  while (e) {
    if (e & 1) r = slow_mul(r, a);
    e >>= 1;
    if (e) a = slow_mul(a, a);
  }
  return r;
}

FqElem FqContext::pow(FqElem a, std::uint64_t e) const {
  if (e == 0) return {1};
  if (a.code == 0) return {0};
  if (!exp_.empty()) {
    const std::uint64_t k = mulmod(log_[a.code], e % (q_ - 1), q_ - 1);
    return {exp_[k]};
  }
  return slow_pow(a, e);
}

FqElem FqContext::inv(FqElem a) const {
  if (a.code == 0) throw DomainError("fq: inversion of zero");
  if (!exp_.empty()) return {exp_[(q_ - 1 - log_[a.code]) % (q_ - 1)]};
  return slow_pow(a, q_ - 2);
}

FqElem FqContext::frobenius(FqElem a) const { return pow(a, p_); }

FqElem FqContext::frobenius_inv(FqElem a) const { return pow(a, q_ / p_); }

bool FqContext::is_primitive(FqElem a) const {
  if (a.code == 0) return false;
  if (q_ == 2) return a.code == 1;
  if (slow_pow(a, q_ - 1).code != 1) return false;
  for (auto [r, e] : factorize(q_ - 1))
    if (slow_pow(a, (q_ - 1) / r).code == 1) return false;
  return true;
}

FqElem FqContext::from_int(std::int64_t k) const {
  std::int64_t r = k % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return {static_cast<std::uint64_t>(r)};
}

FqElem FqContext::from_bigint(const mpz_class& k) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), k.get_mpz_t(), p_);
  return {r.get_ui()};
}

FqElem FqContext::element_at(std::uint64_t index) const {
  if (index >= q_) throw DomainError("fq: element index out of range");
  if (index == 0) return {0};
  if (!exp_.empty()) return {exp_[index - 1]};
  return slow_pow(generator_, index - 1);
}

std::string FqContext::format(FqElem a) const {
  if (t_ == 1) return std::to_string(a.code);
  std::ostringstream os;
  os << '[';
  auto cs = coords(a);
  for (unsigned i = 0; i < t_; ++i) os << (i ? "," : "") << cs[i];
  os << ']';
  return os.str();
}

FqElem FqContext::parse(std::string_view text) const {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty field element");
  if (s.front() == '[') {
    if (s.back() != ']') throw ParseError("unterminated coordinate list '" + s + "'");
    std::vector<std::uint64_t> cs;
    std::string body = s.substr(1, s.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) throw ParseError("empty coordinate in '" + s + "'");
      cs.push_back(from_int(std::stoll(item)).code);
    }
    if (cs.size() > t_) throw ParseError("too many coordinates in '" + s + "'");
    return from_coords(cs);
  }
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("bad field element '" + s + "'");
  }
  if (pos != s.size()) throw ParseError("bad field element '" + s + "'");
  return from_int(v);
}

nlohmann::json FqContext::to_json(FqElem a) const { return coords(a); }

FqElem FqContext::from_json(const nlohmann::json& j) const {
  if (j.is_number_integer()) return from_int(j.get<std::int64_t>());
  if (!j.is_array()) throw ParseError("field element JSON must be an array");
  std::vector<std::uint64_t> cs;
  for (const auto& c : j) cs.push_back(from_int(c.get<std::int64_t>()).code);
  return from_coords(cs);
}

FieldEmbedding::FieldEmbedding(FqPtr source, FqPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_->p() != target_->p())
    throw DomainError("fq_embed: characteristic mismatch");
  const unsigned e = source_->degree(), t = target_->degree();
  if (t % e) throw DomainError("fq_embed: degree " + std::to_string(e) +
                               " does not divide " + std::to_string(t));
  FqElem root{0};
  if (e == 1) {
    root = target_->one();  // unused beyond rho^0
  } else if (source_->same_as(*target_)) {
    root = target_->from_coords(std::vector<std::uint64_t>{0, 1});
  } else {
    bool found = false;
    const auto& m = source_->modulus();
    for (std::uint64_t code = 0; code < target_->order() && !found; ++code) {
      FqElem x{code}, acc{0};
      for (std::size_t i = m.size(); i-- > 0;)
        acc = target_->add(target_->mul(acc, x), target_->from_int(static_cast<std::int64_t>(m[i])));
      if (acc.code == 0) {
        root = x;
        found = true;
      }
    }
    if (!found) throw InternalError("fq_embed: no root of the subfield modulus");
  }
  root_powers_.resize(e);
  FqElem pw = target_->one();
  for (unsigned i = 0; i < e; ++i) {
    root_powers_[i] = pw;
    pw = target_->mul(pw, root);
  }
}

FqElem FieldEmbedding::operator()(FqElem a) const {
  const auto cs = source_->coords(a);
  FqElem r{0};
  for (std::size_t i = 0; i < cs.size(); ++i)
    r = target_->add(r, target_->mul(target_->from_int(static_cast<std::int64_t>(cs[i])),
                                     root_powers_[i]));
  return r;
}

}  // namespace wjit
