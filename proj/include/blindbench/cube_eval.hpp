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

#include <vector>

#include "blindbench/field.hpp"
#include "blindbench/qbf.hpp"
#include "blindbench/schedule.hpp"

namespace blindbench {

// Kernel selection for the exponential-cube evaluations. Serial is the
// reference implementation; Parallel forks OpenMP tasks over the top of the
// recursion tree and must return bit-identical values for any thread count,
// since field addition and multiplication are exactly associative.
enum class EvalMode { Auto, Serial, Parallel };

// Value of the operator suffix schedule[first..] applied to the arithmetized
// matrix, at the point `assign` (indexed by variable, entry 0 unused but
// must carry the field modulus). A quantifier operator on v combines the
// branch values v=0 / v=1 with product (forall) or probabilistic OR
// (exists); a reduction operator on v blends them linearly with the weight
// assign[v] held on entry. Entries for variables bound inside the suffix
// are ignored. Cost: 2^(suffix length) matrix evaluations.
Fp suffix_value(const Qbf& q, const std::vector<Round>& schedule,
                std::size_t first, std::vector<Fp>& assign,
                EvalMode mode = EvalMode::Auto);

// Fully quantified value of the arithmetization: suffix_value over the whole
// schedule. Equals 1 iff the instance is true, 0 otherwise.
Fp quantified_value(const Qbf& q, std::uint64_t p,
                    EvalMode mode = EvalMode::Auto);

}  // namespace blindbench
