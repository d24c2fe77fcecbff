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

#include <cstdint>
#include <string>
#include <vector>

#include "blindbench/field.hpp"

namespace blindbench {

// Quantifier-free boolean formula stored as a flat arena. Children always
// precede their parents, so evaluation is a single forward pass; the root
// is the last node.
class Formula {
 public:
  enum class Op : std::uint8_t { Var, Not, And, Or };

  struct Node {
    Op op;
    std::int32_t a;  // Var: variable id (1-based); otherwise left/only child
    std::int32_t b;  // And/Or: right child
  };

  std::int32_t add_var(std::int32_t id);
  std::int32_t add_not(std::int32_t child);
  std::int32_t add_bin(Op op, std::int32_t l, std::int32_t r);

  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::int32_t root() const { return static_cast<std::int32_t>(nodes_.size()) - 1; }

  // Boolean evaluation; `values[v]` holds the assignment of variable v.
  bool eval(const std::vector<std::uint8_t>& values,
            std::vector<std::uint8_t>& scratch) const;

  // Arithmetized evaluation over F_p: VAR(v) -> assign[v], NOT a -> 1 - a,
  // a AND b -> a * b, a OR b -> 1 - (1 - a)(1 - b). Agrees with eval() on
  // {0, 1} assignments.
  Fp eval_field(const std::vector<Fp>& assign, std::vector<Fp>& scratch) const;

  // occurrences[v] = number of VAR(v) leaves; index 0 unused.
  std::vector<std::uint32_t> occurrence_counts(unsigned n) const;

  std::string str() const;  // prefix s-expression

 private:
  std::vector<Node> nodes_;
};

enum class Quantifier : std::uint8_t { Forall, Exists };

// Closed quantified boolean formula: variable v (1-based) is bound by
// prefix[v - 1]; every matrix variable appears in the prefix exactly once.
struct Qbf {
  std::vector<Quantifier> prefix;
  Formula matrix;

  unsigned var_count() const { return static_cast<unsigned>(prefix.size()); }
};

// What a delegated instance is allowed to reveal about itself: the
// variable count and the matrix size. Inputs compared in a blindness audit
// must agree on this.
struct Leakage {
  unsigned n = 0;
  std::size_t matrix_nodes = 0;

  bool operator==(const Leakage&) const = default;
  std::string str() const;
};

Leakage leakage(const Qbf& q);

// Text format:
//   line 1            p qbf <n>
//   quantifier lines  a|e <var...> 0
//   body              one prefix s-expression, e.g. (and (or 1 (not 2)) 3)
// '#' starts a comment; an optional lone 0 after the body is tolerated.
Qbf parse_qbf(const std::string& text);

// Canonical form: one variable per quantifier line, binary and/or. Satisfies
// parse_qbf(print_qbf(q)) == q structurally.
std::string print_qbf(const Qbf& q);

// Reference truth value by exhaustive recursion over the prefix. Guarded by
// a variable cap: 2^n assignments are enumerated.
bool brute_force_truth(const Qbf& q, unsigned max_vars = 20);

// Deterministic random instance: `size` is the target matrix node count
// (rounded up to 2n - 1 so every variable occurs at least once).
Qbf random_qbf(unsigned n, std::size_t size, std::uint64_t seed);

}  // namespace blindbench
