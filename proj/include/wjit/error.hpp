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

#ifndef WJIT_ERROR_HPP_
#define WJIT_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wjit {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operands from different rings/contexts, or arity mismatch.
class MismatchError : public Error {
 public:
  using Error::Error;
};

// A configured desk-scale size cap was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A decision procedure declines to answer (e.g. characteristic too small).
class Refusal : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed. Signals a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace wjit

#endif  // WJIT_ERROR_HPP_
