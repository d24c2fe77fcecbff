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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "blindbench/errors.hpp"
#include "blindbench/qbf.hpp"

using namespace blindbench;

namespace {

const char* kEq2 =
    "p qbf 2\n"
    "a 1 0\n"
    "e 2 0\n"
    "(or (and 1 2) (and (not 1) (not 2)))\n";

// All 2^n boolean assignments, agreement between boolean and field
// evaluation; field values must stay in {0, 1}.
void check_arithmetization(const Qbf& q, std::uint64_t p) {
  const unsigned n = q.var_count();
  std::vector<std::uint8_t> bits(n + 1, 0), bscratch;
  std::vector<Fp> assign(n + 1, Fp::zero(p)), fscratch;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    for (unsigned v = 1; v <= n; ++v) {
      bits[v] = (mask >> (v - 1)) & 1;
      assign[v] = Fp(bits[v], p);
    }
    const bool b = q.matrix.eval(bits, bscratch);
    const Fp f = q.matrix.eval_field(assign, fscratch);
    CHECK(f.value() == (b ? 1 : 0));
  }
}

}  // namespace

TEST_CASE("parser builds the expected arena") {
  const Qbf q = parse_qbf(kEq2);
  REQUIRE(q.prefix.size() == 2);
  CHECK(q.prefix[0] == Quantifier::Forall);
  CHECK(q.prefix[1] == Quantifier::Exists);
  // (or (and 1 2) (and (not 1) (not 2))): 4 leaves + 2 nots + 3 binaries.
  CHECK(q.matrix.node_count() == 9);
  const auto occ = q.matrix.occurrence_counts(2);
  CHECK(occ[1] == 2);
  CHECK(occ[2] == 2);
}

TEST_CASE("print and parse round-trip") {
  const Qbf q = parse_qbf(kEq2);
  const Qbf r = parse_qbf(print_qbf(q));
  CHECK(r.prefix == q.prefix);
  CHECK(print_qbf(r) == print_qbf(q));
  CHECK(r.matrix.str() == q.matrix.str());
}

TEST_CASE("comments and a trailing 0 are tolerated") {
  const Qbf q = parse_qbf(
      "# header comment\n"
      "p qbf 1\n"
      "e 1 0\n"
      "1  # the matrix is a bare variable\n"
      "0\n");
  CHECK(q.prefix.size() == 1);
  CHECK(q.matrix.node_count() == 1);
}

TEST_CASE("parse errors carry line and column") {
  // A parenthesized expression must start with an operator.
  CHECK_THROWS_WITH_AS(parse_qbf("p qbf 1\ne 1 0\n(1)\n"),
                       "3:2: expected operator and/or/not", ParseError);
  CHECK_THROWS_AS(parse_qbf(""), ParseError);
  CHECK_THROWS_AS(parse_qbf("p qbf 1\n1\n"), ParseError);  // missing prefix
  CHECK_THROWS_AS(parse_qbf("p qbf 1\ne 2 0\n1\n"), ParseError);  // var > n
  CHECK_THROWS_AS(parse_qbf("p qbf 2\na 1 0\ne 2 0\n1\n2\n"),
                  ParseError);  // trailing garbage
  CHECK_THROWS_AS(parse_qbf("p qbf 2\na 1 0\n(or 1 2)\n"),
                  ParseError);  // not all variables quantified
}

TEST_CASE("brute-force truth matches the known fixtures") {
  CHECK(brute_force_truth(parse_qbf("p qbf 1\ne 1 0\n1\n")));
  CHECK_FALSE(brute_force_truth(parse_qbf("p qbf 1\na 1 0\n1\n")));
  CHECK(brute_force_truth(parse_qbf(kEq2)));
  CHECK_FALSE(brute_force_truth(parse_qbf("p qbf 2\na 1 0\na 2 0\n(or 1 2)\n")));
  CHECK(brute_force_truth(
      parse_qbf("p qbf 3\na 1 0\ne 2 0\na 3 0\n(or (and 1 2) (not (and 1 3)))\n")));
}

TEST_CASE("xor truth table through the arena") {
  Formula f;
  const auto x1 = f.add_var(1);
  const auto x2 = f.add_var(2);
  const auto l = f.add_bin(Formula::Op::And, x1, f.add_not(x2));
  const auto r = f.add_bin(Formula::Op::And, f.add_not(x1), x2);
  f.add_bin(Formula::Op::Or, l, r);
  std::vector<std::uint8_t> scratch;
  CHECK_FALSE(f.eval({0, 0, 0}, scratch));
  CHECK(f.eval({0, 1, 0}, scratch));
  CHECK(f.eval({0, 0, 1}, scratch));
  CHECK_FALSE(f.eval({0, 1, 1}, scratch));
}

TEST_CASE("arithmetization agrees with boolean evaluation") {
  check_arithmetization(parse_qbf(kEq2), 17);
  check_arithmetization(parse_qbf("p qbf 1\ne 1 0\n1\n"), 17);
  for (std::uint64_t seed = 0; seed < 50; ++seed)
    check_arithmetization(random_qbf(4, 12, seed), 257);
}

TEST_CASE("leakage is the variable count and matrix size") {
  const Leakage l = leakage(parse_qbf(kEq2));
  CHECK(l.n == 2);
  CHECK(l.matrix_nodes == 9);
  CHECK(l == leakage(parse_qbf(kEq2)));
  CHECK_FALSE(l == leakage(parse_qbf("p qbf 1\ne 1 0\n1\n")));
}

TEST_CASE("random instances are deterministic, closed, and well-formed") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Qbf a = random_qbf(3, 9, seed);
    const Qbf b = random_qbf(3, 9, seed);
    CHECK(print_qbf(a) == print_qbf(b));
    CHECK(a.var_count() == 3);
    const Qbf back = parse_qbf(print_qbf(a));
    CHECK(print_qbf(back) == print_qbf(a));
    for (const auto& node : a.matrix.nodes())
      if (node.op == Formula::Op::Var) {
        CHECK(node.a >= 1);
        CHECK(node.a <= 3);
      }
  }
  CHECK(print_qbf(random_qbf(3, 9, 0)) != print_qbf(random_qbf(3, 9, 1)));
}
