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

#include "wjit/numtheory.hpp"

#include "wjit/error.hpp"

namespace wjit {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    if (n % d) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

std::uint64_t checked_pow(std::uint64_t p, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > (std::uint64_t{1} << 62) / p)
      throw CapExceeded("integer power " + std::to_string(p) + "^" +
                        std::to_string(e) + " exceeds 62 bits");
    r *= p;
  }
  return r;
}

std::uint32_t vp(std::uint64_t n, std::uint64_t p) {
  if (n == 0) return kInfiniteValuation;
  std::uint32_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::uint32_t vp(const mpz_class& n, std::uint64_t p) {
  if (n == 0) return kInfiniteValuation;
  mpz_class q = n;
  std::uint32_t v = 0;
  while (mpz_divisible_ui_p(q.get_mpz_t(), p)) {
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), p);
    ++v;
  }
  return v;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 1;
  std::uint64_t phi = m;
  for (auto [q, e] : factorize(m)) phi = phi / q * (q - 1);
  if (powmod(a, phi, m) != 1)
    throw DomainError("multiplicative_order: argument not a unit");
  std::uint64_t order = phi;
  for (auto [q, e] : factorize(phi)) {
    for (unsigned i = 0; i < e && order % q == 0; ++i) {
      if (powmod(a, order / q, m) != 1) break;
      order /= q;
    }
  }
  return order;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

mpz_class multinomial(std::span<const std::uint64_t> parts) {
  mpz_class result = 1;
  std::uint64_t total = 0;
  for (std::uint64_t k : parts) {
    total += k;
    result *= binomial(total, k);
  }
  return result;
}

mpz_class binomial(std::uint64_t n, std::uint64_t k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

unsigned ceil_log2(const mpz_class& x) {
  if (x <= 1) return 0;
  mpz_class y = x - 1;
  return static_cast<unsigned>(mpz_sizeinbase(y.get_mpz_t(), 2));
}

std::uint64_t to_u64(const mpz_class& x) {
  if (x < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > 63)
    throw CapExceeded("integer " + x.get_str() + " exceeds 63 bits");
  return static_cast<std::uint64_t>(mpz_get_ui(x.get_mpz_t()));
}

}  // namespace wjit
