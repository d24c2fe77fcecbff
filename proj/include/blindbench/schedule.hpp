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

#include "blindbench/qbf.hpp"

namespace blindbench {

enum class RoundKind : std::uint8_t { Forall, Exists, Reduce };

struct Round {
  RoundKind kind;
  unsigned var;            // the variable this round is about (1-based)
  unsigned degree_bound;   // max degree the verifier accepts this round
};

// Round plan for one session. Quantifiers are processed outermost first;
// each quantifier round is followed by one degree-reduction round for every
// variable challenged in an earlier quantifier round:
//
//   Q1  Q2 R1  Q3 R1 R2  ...  Qn R1 .. R(n-1)
//
// Reading the schedule left to right as operators applied around the
// arithmetized matrix, a round's polynomial is the remaining suffix as a
// univariate in the round variable. Its degree bound is 2 when a later
// round still reduces that variable (a reduction pins the degree to 1 and
// at most one quantifier binding doubles it before the next contact), and
// the variable's matrix occurrence count when the suffix touches the raw
// matrix directly.
std::vector<Round> build_schedule(const Qbf& q);

// n + n(n-1)/2, the length build_schedule produces for n variables.
std::size_t schedule_length(unsigned n);

std::uint64_t sum_degree_bounds(const std::vector<Round>& schedule);

std::string round_str(const Round& r);

}  // namespace blindbench
