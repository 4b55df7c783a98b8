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

#ifndef WJIT_INTERP_HPP_
#define WJIT_INTERP_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "wjit/circuit.hpp"
#include "wjit/galois_ring.hpp"
#include "wjit/wjcore.hpp"

namespace wjit {

inline constexpr std::uint64_t kDefaultInterpPointCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kDefaultAlgo5WorkCap = 200'000'000;

// Evaluation data for coefficients of univariate polynomials of degree
// < p^t - 1 over G_{m,t}.
struct InterpPlan {
  GrPtr ring;
  unsigned t = 0;
  std::uint64_t D = 0;          // Kronecker base
  std::uint64_t order = 0;      // p^t - 1
  GrElem xi;                    // of multiplicative order p^t - 1
  GrElem inv_order;             // (p^t - 1)^{-1}
  std::vector<GrElem> xi_powers;  // xi^0 .. xi^{order-1}

  static InterpPlan create(GrPtr ring, std::uint64_t D = 0, std::uint64_t point_cap = kDefaultInterpPointCap);
};

// Coefficient of z^d from the values f(xi^0), ..., f(xi^{order-1}).
GrElem interp_coeff_from_values(std::span<const GrElem> values, std::uint64_t d, const InterpPlan& plan);
GrElem interp_coeff(const std::function<GrElem(const GrElem&)>& f, std::uint64_t d, const InterpPlan& plan);

// Least multiple t of e with p^t - 1 >= D^n; CapExceeded beyond point_cap.
unsigned choose_t(unsigned e, std::uint64_t D, std::uint64_t n, std::uint64_t p,
                  std::uint64_t point_cap = kDefaultInterpPointCap);

// Circuit for (g_1 ... g_r)^(p^level - 1) prod_{j in I} x_j det J_{x_I}(g).
Circuit<GrContext> wjp_circuit(std::span<const Circuit<GrContext>> gs, std::span<const std::size_t> index_set,
                               unsigned level);

enum class Algo5Mode { exhaustive, support_guided };

struct Algo5Options {
  Algo5Mode mode = Algo5Mode::exhaustive;
  std::uint64_t point_cap = kDefaultInterpPointCap;
  // Exhaustive mode: C(n,r) * D^n * (p^t - 1) ring operations at most.
  std::uint64_t work_cap = kDefaultAlgo5WorkCap;
  std::size_t term_cap = kDefaultWjpTermCap;
};

struct Algo5Parameters {
  std::uint64_t delta = 0, D = 0;
  unsigned level = 0, t = 0;
};

Algo5Parameters algo5_parameters(std::span<const Circuit<FqContext>> Cs, std::uint64_t point_cap = kDefaultInterpPointCap);

IndependenceVerdict algo5_independence(std::span<const Circuit<FqContext>> Cs, const Algo5Options& opts = {});

}  // namespace wjit

#endif  // WJIT_INTERP_HPP_
