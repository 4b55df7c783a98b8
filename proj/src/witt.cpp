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

#include "wjit/witt.hpp"

#include <map>
#include <mutex>

namespace wjit {
namespace {

std::mutex cache_mutex;
std::map<std::pair<std::uint64_t, unsigned>, std::shared_ptr<const UniversalWittPolys>> cache;

// Variables x_0..x_j, y_0..y_j of level j placed into the level-n ring.
IntPoly widen(const IntPoly& f, unsigned j, unsigned n) {
  std::vector<std::size_t> mapping;
  for (unsigned k = 0; k <= j; ++k) mapping.push_back(k);
  for (unsigned k = 0; k <= j; ++k) mapping.push_back(n + 1 + k);
  return remap_variables(f, 2 * (n + 1), mapping);
}

IntPoly divide_exact(const IntPoly& f, const mpz_class& d) {
  std::vector<IntPoly::Term> ts;
  for (const auto& t : f.terms()) {
    if (!mpz_divisible_p(t.coeff.get_mpz_t(), d.get_mpz_t()))
      throw InternalError("universal Witt polynomial: coefficient " + t.coeff.get_str() + " not divisible by " +
                          d.get_str());
    ts.push_back({t.exps, t.coeff / d});
  }
  return IntPoly::from_terms(f.ring(), f.arity(), std::move(ts));
}

std::shared_ptr<const UniversalWittPolys> derive(std::uint64_t p, unsigned n, unsigned cap) {
  const auto zz = IntegerRing::instance();
  const std::size_t arity = 2 * (n + 1);
  const IntPoly wx = ghost_polynomial(p, n, arity, 0);
  const IntPoly wy = ghost_polynomial(p, n, arity, n + 1);
  IntPoly s = wx + wy, m = wx * wy;
  mpz_class pj = 1;
  for (unsigned j = 0; j < n; ++j, pj *= static_cast<unsigned long>(p)) {
    const auto lower = universal_witt_polys(p, j, cap);
    const std::uint64_t e = checked_pow(p, n - j);
    s = s - widen(lower->sum, j, n).pow(e).scale(pj);
    m = m - widen(lower->product, j, n).pow(e).scale(pj);
  }
  auto out = std::make_shared<UniversalWittPolys>();
  out->p = p;
  out->level = n;
  out->sum = divide_exact(s, pj);
  out->product = divide_exact(m, pj);
  return out;
}

}  // namespace

IntPoly ghost_polynomial(std::uint64_t p, unsigned n, std::size_t arity, std::size_t first) {
  const auto zz = IntegerRing::instance();
  IntPoly w(zz, arity);
  mpz_class pj = 1;
  for (unsigned j = 0; j <= n; ++j, pj *= static_cast<unsigned long>(p))
    w = w + IntPoly::monomial(zz, unit_exponents(arity, first + j, checked_pow(p, n - j)), pj);
  return w;
}

std::shared_ptr<const UniversalWittPolys> universal_witt_polys(std::uint64_t p, unsigned level, unsigned level_cap) {
  if (!is_prime(p)) throw DomainError("universal Witt polynomials: p not prime");
  if (level > level_cap)
    throw CapExceeded("universal Witt polynomials: level " + std::to_string(level) + " above cap " +
                      std::to_string(level_cap));
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find({p, level}); it != cache.end()) return it->second;
  }
  // Derived outside the lock; concurrent duplicates compute equal results.
  auto polys = derive(p, level, level_cap);
  std::lock_guard lock(cache_mutex);
  return cache.emplace(std::make_pair(p, level), std::move(polys)).first->second;
}

GrElem witt_to_galois(const WittRing<FqContext>& w, const WittVec<FqContext>& a, const GrContext& gr) {
  if (gr.precision() != w.length()) throw MismatchError("witt_to_galois: precision differs from Witt length");
  if (!gr.base()->same_as(*w.base())) throw MismatchError("witt_to_galois: different residue fields");
  if (a.coords.size() != w.length()) throw MismatchError("witt_to_galois: vector length");
  const auto& f = *w.base();
  GrElem z = gr.zero();
  for (unsigned i = 0; i < w.length(); ++i) {
    FqElem root = a.coords[i];
    for (unsigned k = 0; k < i; ++k) root = f.frobenius_inv(root);
    z = gr.add(z, gr.scale(gr.teichmuller(root), checked_pow(w.p(), i)));
  }
  return z;
}

WittVec<FqContext> galois_to_witt(const WittRing<FqContext>& w, const GrElem& z, const GrContext& gr) {
  if (gr.precision() != w.length()) throw MismatchError("galois_to_witt: precision differs from Witt length");
  const auto& f = *w.base();
  auto out = w.zero();
  GrElem rest = z;
  for (unsigned i = 0; i < w.length(); ++i) {
    const FqElem digit = gr.reduce_mod_p(rest);
    FqElem coord = digit;
    for (unsigned k = 0; k < i; ++k) coord = f.frobenius(coord);
    out.coords[i] = coord;
    rest = gr.sub(rest, gr.teichmuller(digit));
    if (i + 1 < w.length()) rest = gr.div_p_pow(rest, 1);
  }
  return out;
}

}  // namespace wjit
