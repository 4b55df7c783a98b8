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

#ifndef WJIT_TRUNC_RING_HPP_
#define WJIT_TRUNC_RING_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wjit/error.hpp"
#include "wjit/numtheory.hpp"

namespace wjit {

// F_p[u]/(u^k): a small non-reduced F_p-algebra, used to exercise Witt
// vectors over coefficient rings that are not fields.
class TruncPolyRing {
 public:
  using Elem = std::vector<std::uint64_t>;  // length k, low degree first

  static std::shared_ptr<const TruncPolyRing> create(std::uint64_t p, unsigned k) {
    if (!is_prime(p)) throw DomainError("trunc ring: p not prime");
    if (k == 0) throw DomainError("trunc ring: k must be >= 1");
    return std::shared_ptr<const TruncPolyRing>(new TruncPolyRing(p, k));
  }

  std::uint64_t p() const { return p_; }
  unsigned nilpotency() const { return k_; }
  std::uint64_t characteristic() const { return p_; }
  bool same_as(const TruncPolyRing& o) const { return p_ == o.p_ && k_ == o.k_; }

  Elem zero() const { return Elem(k_, 0); }
  Elem one() const {
    Elem r(k_, 0);
    r[0] = 1;
    return r;
  }
  Elem u() const {
    Elem r(k_, 0);
    if (k_ > 1) r[1] = 1;
    return r;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r(k_);
    for (unsigned i = 0; i < k_; ++i) r[i] = (a[i] + b[i]) % p_;
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem neg(const Elem& a) const {
    Elem r(k_);
    for (unsigned i = 0; i < k_; ++i) r[i] = (p_ - a[i]) % p_;
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem r(k_, 0);
    for (unsigned i = 0; i < k_; ++i) {
      if (!a[i]) continue;
      for (unsigned j = 0; i + j < k_; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
    }
    return r;
  }
  bool is_zero(const Elem& a) const {
    for (auto x : a)
      if (x) return false;
    return true;
  }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  Elem from_int(std::int64_t v) const {
    Elem r(k_, 0);
    std::int64_t m = v % static_cast<std::int64_t>(p_);
    r[0] = static_cast<std::uint64_t>(m < 0 ? m + static_cast<std::int64_t>(p_) : m);
    return r;
  }
  Elem from_bigint(const mpz_class& v) const {
    mpz_class m;
    mpz_fdiv_r_ui(m.get_mpz_t(), v.get_mpz_t(), p_);
    Elem r(k_, 0);
    r[0] = m.get_ui();
    return r;
  }
  std::string format(const Elem& a) const {
    std::ostringstream os;
    os << '[';
    for (unsigned i = 0; i < k_; ++i) os << (i ? "," : "") << a[i];
    os << ']';
    return os.str();
  }
  Elem parse(std::string_view text) const {
    std::string s(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') return from_int(std::stoll(s));
    Elem r(k_, 0);
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string item;
    unsigned i = 0;
    while (std::getline(ss, item, ',')) {
      if (i >= k_) throw ParseError("too many coordinates");
      r[i++] = from_int(std::stoll(item))[0];
    }
    return r;
  }
  nlohmann::json to_json(const Elem& a) const { return a; }
  Elem from_json(const nlohmann::json& j) const {
    Elem r(k_, 0);
    unsigned i = 0;
    for (const auto& c : j) r.at(i++) = from_int(c.get<std::int64_t>())[0];
    return r;
  }

  // Elements by index in base p (index < p^k).
  Elem element_at(std::uint64_t index) const {
    Elem r(k_);
    for (unsigned i = 0; i < k_; ++i, index /= p_) r[i] = index % p_;
    return r;
  }
  std::uint64_t size() const { return checked_pow(p_, k_); }

 private:
  TruncPolyRing(std::uint64_t p, unsigned k) : p_(p), k_(k) {}
  std::uint64_t p_;
  unsigned k_;
};

}  // namespace wjit

#endif  // WJIT_TRUNC_RING_HPP_
