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

#ifndef WJIT_INT_RING_HPP_
#define WJIT_INT_RING_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wjit/error.hpp"

namespace wjit {

// The integers, arbitrary precision. Coefficient ring of the universal Witt
// polynomials.
class IntegerRing {
 public:
  using Elem = mpz_class;

  static std::shared_ptr<const IntegerRing> instance() {
    static const auto ring = std::make_shared<const IntegerRing>();
    return ring;
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  Elem from_int(std::int64_t k) const { return mpz_class(static_cast<long>(k)); }
  Elem from_bigint(const mpz_class& k) const { return k; }
  std::uint64_t characteristic() const { return 0; }
  bool same_as(const IntegerRing&) const { return true; }

  std::string format(const Elem& a) const { return a.get_str(); }
  Elem parse(std::string_view text) const {
    mpz_class v;
    if (v.set_str(std::string(text), 10) != 0)
      throw ParseError("bad integer '" + std::string(text) + "'");
    return v;
  }
  nlohmann::json to_json(const Elem& a) const {
    if (a.fits_slong_p()) return a.get_si();
    return a.get_str();
  }
  Elem from_json(const nlohmann::json& j) const {
    if (j.is_string()) return parse(j.get<std::string>());
    return mpz_class(static_cast<long>(j.get<std::int64_t>()));
  }
};

}  // namespace wjit

#endif  // WJIT_INT_RING_HPP_
