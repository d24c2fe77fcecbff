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

#include "blindbench/cube_eval.hpp"

namespace blindbench {

namespace {

// Suffixes at or below this length run serially; above it the parallel
// kernel forks one task per branch.
constexpr std::size_t kTaskCutoff = 12;

Fp combine(const Round& op, Fp f0, Fp f1, Fp weight, Fp one) {
  switch (op.kind) {
    case RoundKind::Forall: return f0 * f1;
    case RoundKind::Exists: return one - (one - f0) * (one - f1);
    case RoundKind::Reduce: return weight * f1 + (one - weight) * f0;
  }
  return f0;
}

Fp rec_serial(const Qbf& q, const std::vector<Round>& sched, std::size_t k,
              std::vector<Fp>& assign, std::vector<Fp>& scratch, Fp one) {
  if (k == sched.size()) return q.matrix.eval_field(assign, scratch);
  const Round& op = sched[k];
  const Fp saved = assign[op.var];
  assign[op.var] = one - one;
  const Fp f0 = rec_serial(q, sched, k + 1, assign, scratch, one);
  assign[op.var] = one;
  const Fp f1 = rec_serial(q, sched, k + 1, assign, scratch, one);
  assign[op.var] = saved;
  return combine(op, f0, f1, saved, one);
}

Fp rec_parallel(const Qbf& q, const std::vector<Round>& sched, std::size_t k,
                std::vector<Fp>& assign, Fp one) {
  if (sched.size() - k <= kTaskCutoff) {
    std::vector<Fp> scratch;
    return rec_serial(q, sched, k, assign, scratch, one);
  }
  const Round& op = sched[k];
  const Fp saved = assign[op.var];
  std::vector<Fp> branch0 = assign;
  branch0[op.var] = one - one;
  assign[op.var] = one;
  Fp f0 = one, f1 = one;
#pragma omp task shared(f0, branch0, q, sched) firstprivate(k, one)
  f0 = rec_parallel(q, sched, k + 1, branch0, one);
  f1 = rec_parallel(q, sched, k + 1, assign, one);
#pragma omp taskwait
  assign[op.var] = saved;
  return combine(op, f0, f1, saved, one);
}

}  // namespace

Fp suffix_value(const Qbf& q, const std::vector<Round>& sched,
                std::size_t first, std::vector<Fp>& assign, EvalMode mode) {
  const Fp one = Fp::one(assign.at(0).modulus());
  bool parallel = mode == EvalMode::Parallel ||
                  (mode == EvalMode::Auto && sched.size() - first > kTaskCutoff);
  if (!parallel) {
    std::vector<Fp> scratch;
    return rec_serial(q, sched, first, assign, scratch, one);
  }
  Fp result = one;
#pragma omp parallel shared(q, sched, first, assign, one, result)
#pragma omp single
  result = rec_parallel(q, sched, first, assign, one);
  return result;
}

Fp quantified_value(const Qbf& q, std::uint64_t p, EvalMode mode) {
  const std::vector<Round> sched = build_schedule(q);
  std::vector<Fp> assign(q.var_count() + 1, Fp::zero(p));
  return suffix_value(q, sched, 0, assign, mode);
}

}  // namespace blindbench
