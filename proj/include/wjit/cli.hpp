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

#ifndef WJIT_CLI_HPP_
#define WJIT_CLI_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wjit/circuit.hpp"
#include "wjit/wjcore.hpp"

namespace wjit {

// Problem file:
//   field p=<prime> [e=<degree>] [modulus=<c0>,<c1>,...,<ce>]
//   vars <name> <name> ...
//   <name> = <polynomial>
//   circuit <name> = <path, relative to the problem file>
// '#' starts a comment. Header lines come first.
struct ProblemEntry {
  std::string name;
  std::string source;  // polynomial text or circuit path
  FqPoly poly;
  std::optional<Circuit<FqContext>> circuit;
  std::size_t line = 0;
};

struct Problem {
  FqPtr field;
  std::vector<std::string> vars;
  std::vector<ProblemEntry> entries;

  std::vector<FqPoly> polys() const;
  // Circuit entries as given; polynomial entries as sum-of-monomials circuits.
  std::vector<Circuit<FqContext>> circuits() const;
  nlohmann::json to_json() const;
};

Problem parse_problem(std::string_view text, const std::filesystem::path& base_dir = {});
Problem load_problem(const std::filesystem::path& path);

// Number of variables used by a circuit file: the largest `var j`.
std::size_t infer_circuit_arity(std::string_view text);

enum ExitCode : int {
  kExitPositive = 0,      // independent, non-degenerate, hit found
  kExitNegative = 1,      // dependent, degenerate, no hit
  kExitInconclusive = 2,  // refusal, inconclusive, cap exceeded
  kExitError = 3,
  kExitDisagreement = 4,
};

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wjit

#endif  // WJIT_CLI_HPP_
