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

#ifndef WJIT_GALOIS_RING_HPP_
#define WJIT_GALOIS_RING_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <json.hpp>

#include "wjit/fq.hpp"
#include "wjit/ring.hpp"

namespace wjit {

// Element of G_{m,t} = (Z/p^m)[x]/(H): t residues mod p^m, low degree first.
struct GrElem {
  boost::container::small_vector<std::uint64_t, 2> c;
  friend bool operator==(const GrElem&, const GrElem&) = default;
};

// Galois ring of characteristic p^m lifting an FqContext. H is the
// coefficient-wise lift of the base modulus and xi the Teichmuller lift of the
// base generator, a primitive (p^t - 1)-th root of unity.
class GrContext {
 public:
  using Elem = GrElem;

  static std::shared_ptr<const GrContext> create(FqPtr base, unsigned m);

  std::uint64_t p() const { return base_->p(); }
  unsigned precision() const { return m_; }
  unsigned degree() const { return base_->degree(); }
  // p^m.
  std::uint64_t characteristic() const { return pm_; }
  const FqPtr& base() const { return base_; }
  const std::vector<std::uint64_t>& lift_modulus() const { return modulus_; }
  const GrElem& xi() const { return xi_; }
  bool same_as(const GrContext& other) const;

  GrElem zero() const;
  GrElem one() const;
  GrElem add(const GrElem& a, const GrElem& b) const;
  GrElem sub(const GrElem& a, const GrElem& b) const;
  GrElem neg(const GrElem& a) const;
  GrElem mul(const GrElem& a, const GrElem& b) const;
  GrElem pow(const GrElem& a, std::uint64_t e) const;
  GrElem pow(const GrElem& a, const mpz_class& e) const;
  bool is_zero(const GrElem& a) const;
  bool equal(const GrElem& a, const GrElem& b) const { return a == b; }
  bool is_unit(const GrElem& a) const;
  GrElem unit_inv(const GrElem& a) const;

  FqElem reduce_mod_p(const GrElem& a) const;
  GrElem lift(FqElem a) const;
  GrElem teichmuller(FqElem a) const;
  // Largest v <= m with a in p^v G.
  unsigned val_p(const GrElem& a) const;
  // a / p^k for val_p(a) >= k; the result is determined mod p^{m-k}.
  GrElem div_p_pow(const GrElem& a, unsigned k) const;
  GrElem scale(const GrElem& a, std::uint64_t k) const;

  GrElem from_int(std::int64_t k) const;
  GrElem from_bigint(const mpz_class& k) const;
  GrElem from_coords(std::vector<std::uint64_t> cs) const;

  std::string format(const GrElem& a) const;
  GrElem parse(std::string_view text) const;
  nlohmann::json to_json(const GrElem& a) const;
  GrElem from_json(const nlohmann::json& j) const;

 private:
  GrContext(FqPtr base, unsigned m);

  FqPtr base_;
  unsigned m_;
  std::uint64_t pm_;
  std::vector<std::uint64_t> modulus_;  // monic, length t+1
  GrElem xi_;
};

using GrPtr = std::shared_ptr<const GrContext>;

}  // namespace wjit

#endif  // WJIT_GALOIS_RING_HPP_
