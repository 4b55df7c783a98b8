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

#ifndef WJIT_NUMTHEORY_HPP_
#define WJIT_NUMTHEORY_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace wjit {

// Valuation used for the all-zero exponent vector and for 0 in general.
inline constexpr std::uint32_t kInfiniteValuation =
    std::numeric_limits<std::uint32_t>::max();

bool is_prime(std::uint64_t n);

// Distinct prime factors with multiplicity, ascending, by trial division.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// p^e, throwing CapExceeded if it does not fit in 63 bits.
std::uint64_t checked_pow(std::uint64_t p, unsigned e);

// v_p(n) for n != 0; kInfiniteValuation for n == 0.
std::uint32_t vp(std::uint64_t n, std::uint64_t p);
std::uint32_t vp(const mpz_class& n, std::uint64_t p);

// Multiplicative order of a modulo m (gcd(a, m) = 1 required).
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

// Primes in [2, bound] in ascending order (sieve).
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

// Exact multinomial coefficient (sum k)! / prod k_i!.
mpz_class multinomial(std::span<const std::uint64_t> parts);

mpz_class binomial(std::uint64_t n, std::uint64_t k);

// ceil(log2(x)) for x >= 1.
unsigned ceil_log2(const mpz_class& x);

std::uint64_t to_u64(const mpz_class& x);

}  // namespace wjit

#endif  // WJIT_NUMTHEORY_HPP_
