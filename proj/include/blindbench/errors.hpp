// Copyright 2026 The blindbench authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blindbench {

// Arithmetic misuse inside a prime field session (division by zero,
// mismatched moduli, interpolation through too few distinct points, ...).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Bad formula text. Carries 1-based line/column of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t col, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + what),
        line_(line),
        col_(col) {}

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t line_;
  std::size_t col_;
};

// A communication policy was violated where the run treats that as fatal
// (e.g. an inter-server send during the computation epoch of a run that
// forbids it).
class PolicyError : public std::runtime_error {
 public:
  explicit PolicyError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid run configuration (non-prime modulus, formula too large for an
// exhaustive operation, enumeration space over the cap, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace blindbench
