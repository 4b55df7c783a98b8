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

#ifndef WJIT_FQ_HPP_
#define WJIT_FQ_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wjit/ring.hpp"

namespace wjit {

// Element of F_{p^t}, packed as code = sum_i c_i p^i where c_0..c_{t-1} are
// the power-basis coordinates (low degree first).
struct FqElem {
  std::uint64_t code = 0;
  friend auto operator<=>(const FqElem&, const FqElem&) = default;
};

// The finite field F_p[x]/(modulus). Immutable after construction.
class FqContext {
 public:
  using Elem = FqElem;

  // Field sizes above this use polynomial arithmetic instead of log tables.
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 22;
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 40;

  // Deterministic context: for t = 1 the modulus is x and the generator the
  // smallest primitive root; for t >= 2 the modulus is the primitive
  // polynomial with the smallest code and the generator is the class of x.
  static std::shared_ptr<const FqContext> create(std::uint64_t p, unsigned t);

  // User-supplied monic irreducible modulus (coefficients low degree first,
  // length t+1). The generator is x if x is primitive, else the primitive
  // element with the smallest code.
  static std::shared_ptr<const FqContext> with_modulus(
      std::uint64_t p, std::vector<std::uint64_t> modulus);

  std::uint64_t p() const { return p_; }
  unsigned degree() const { return t_; }
  std::uint64_t order() const { return q_; }
  std::uint64_t characteristic() const { return p_; }
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  FqElem generator() const { return generator_; }
  bool same_as(const FqContext& other) const;

  std::vector<std::uint64_t> coords(FqElem a) const;
  FqElem from_coords(std::span<const std::uint64_t> coords) const;
  FqElem from_code(std::uint64_t code) const;

  FqElem zero() const { return {0}; }
  FqElem one() const { return {1}; }
  FqElem add(FqElem a, FqElem b) const;
  FqElem sub(FqElem a, FqElem b) const;
  FqElem neg(FqElem a) const;
  FqElem mul(FqElem a, FqElem b) const;
  FqElem inv(FqElem a) const;
  FqElem pow(FqElem a, std::uint64_t e) const;
  FqElem frobenius(FqElem a) const;
  FqElem frobenius_inv(FqElem a) const;
  bool is_zero(FqElem a) const { return a.code == 0; }
  bool equal(FqElem a, FqElem b) const { return a.code == b.code; }
  bool is_primitive(FqElem a) const;

  FqElem from_int(std::int64_t k) const;
  FqElem from_bigint(const mpz_class& k) const;

  // Elements in generator-power order: 0, g^0, g^1, ..., g^{q-2}.
  FqElem element_at(std::uint64_t index) const;

  // Integer for prime fields, "[c0,c1,...]" otherwise.
  std::string format(FqElem a) const;
  // Accepts an integer (prime subfield) or a coordinate list.
  FqElem parse(std::string_view text) const;
  nlohmann::json to_json(FqElem a) const;
  FqElem from_json(const nlohmann::json& j) const;

 private:
  FqContext(std::uint64_t p, std::vector<std::uint64_t> modulus);
  void init_generator(bool prefer_x);
  std::vector<std::uint64_t> poly_mulmod(std::span<const std::uint64_t> a,
                                         std::span<const std::uint64_t> b) const;
  FqElem slow_mul(FqElem a, FqElem b) const;
  FqElem slow_pow(FqElem a, std::uint64_t e) const;

  std::uint64_t p_;
  unsigned t_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  std::vector<std::uint64_t> digit_weight_;  // p^i
  FqElem generator_;
  std::vector<std::uint32_t> exp_;  // g^i, size q-1 (empty above table limit)
  std::vector<std::uint32_t> log_;  // log_g(code), size q
};

using FqPtr = std::shared_ptr<const FqContext>;

// Fixed ring embedding F_{p^e} -> F_{p^t} for e | t, sending the class of x
// to the smallest-code root of the source modulus in the target.
class FieldEmbedding {
 public:
  FieldEmbedding(FqPtr source, FqPtr target);
  FqElem operator()(FqElem a) const;
  const FqPtr& source() const { return source_; }
  const FqPtr& target() const { return target_; }

 private:
  FqPtr source_;
  FqPtr target_;
  std::vector<FqElem> root_powers_;  // rho^0 .. rho^{e-1} in target
};

}  // namespace wjit

#endif  // WJIT_FQ_HPP_
