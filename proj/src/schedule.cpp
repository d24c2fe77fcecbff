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

#include "blindbench/schedule.hpp"

namespace blindbench {

std::vector<Round> build_schedule(const Qbf& q) {
  const unsigned n = q.var_count();
  std::vector<Round> sched;
  sched.reserve(schedule_length(n));
  for (unsigned j = 1; j <= n; ++j) {
    sched.push_back({q.prefix[j - 1] == Quantifier::Forall ? RoundKind::Forall
                                                           : RoundKind::Exists,
                     j, 0});
    for (unsigned v = 1; v < j; ++v) sched.push_back({RoundKind::Reduce, v, 0});
  }

  const std::vector<std::uint32_t> occ = q.matrix.occurrence_counts(n);
  for (std::size_t i = 0; i < sched.size(); ++i) {
    bool reduced_later = false;
    for (std::size_t j = i + 1; j < sched.size() && !reduced_later; ++j)
      reduced_later = sched[j].var == sched[i].var;
    sched[i].degree_bound = reduced_later ? 2 : occ[sched[i].var];
  }
  return sched;
}

std::size_t schedule_length(unsigned n) {
  return n + static_cast<std::size_t>(n) * (n - 1) / 2;
}

std::uint64_t sum_degree_bounds(const std::vector<Round>& schedule) {
  std::uint64_t s = 0;
  for (const Round& r : schedule) s += r.degree_bound;
  return s;
}

std::string round_str(const Round& r) {
  switch (r.kind) {
    case RoundKind::Forall: return "Q(forall," + std::to_string(r.var) + ")";
    case RoundKind::Exists: return "Q(exists," + std::to_string(r.var) + ")";
    case RoundKind::Reduce: return "R(" + std::to_string(r.var) + ")";
  }
  return "?";
}

}  // namespace blindbench
