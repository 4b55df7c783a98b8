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

#ifndef WJIT_RING_HPP_
#define WJIT_RING_HPP_

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wjit/error.hpp"

namespace wjit {

// A commutative ring context. Elements are plain values; all arithmetic goes
// through the (immutable, shareable) context object.
template <class R>
concept CoeffRing = requires(const R& r, const typename R::Elem& a,
                             const mpz_class& big, std::string_view text) {
  typename R::Elem;
  { r.zero() } -> std::same_as<typename R::Elem>;
  { r.one() } -> std::same_as<typename R::Elem>;
  { r.add(a, a) } -> std::same_as<typename R::Elem>;
  { r.sub(a, a) } -> std::same_as<typename R::Elem>;
  { r.neg(a) } -> std::same_as<typename R::Elem>;
  { r.mul(a, a) } -> std::same_as<typename R::Elem>;
  { r.is_zero(a) } -> std::same_as<bool>;
  { r.equal(a, a) } -> std::same_as<bool>;
  { r.from_int(std::int64_t{}) } -> std::same_as<typename R::Elem>;
  { r.from_bigint(big) } -> std::same_as<typename R::Elem>;
  { r.format(a) } -> std::same_as<std::string>;
  { r.parse(text) } -> std::same_as<typename R::Elem>;
  { r.to_json(a) } -> std::same_as<nlohmann::json>;
  { r.from_json(nlohmann::json{}) } -> std::same_as<typename R::Elem>;
  // 0 for characteristic zero; may be a prime power.
  { r.characteristic() } -> std::same_as<std::uint64_t>;
};

template <CoeffRing R>
typename R::Elem ring_pow(const R& ring, typename R::Elem base,
                          std::uint64_t exp) {
  auto result = ring.one();
  while (exp) {
    if (exp & 1) result = ring.mul(result, base);
    exp >>= 1;
    if (exp) base = ring.mul(base, base);
  }
  return result;
}

template <CoeffRing R>
void require_same_ring(const std::shared_ptr<const R>& a,
                       const std::shared_ptr<const R>& b, const char* where) {
  if (a != b && !(a && b && a->same_as(*b)))
    throw MismatchError(std::string(where) + ": operands from different rings");
}

}  // namespace wjit

#endif  // WJIT_RING_HPP_
