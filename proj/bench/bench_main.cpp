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

// Compares the serial reference kernels against the OpenMP ones on the two
// hot paths: exponential-cube quantified evaluation and sampled audit
// tallying. The parallel kernels must return bit-identical results; a
// checksum mismatch makes the benchmark exit nonzero.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <vector>

#include "blindbench/audit.hpp"
#include "blindbench/cube_eval.hpp"
#include "blindbench/field.hpp"
#include "blindbench/qbf.hpp"
#include "blindbench/report.hpp"

using namespace blindbench;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main() {
  std::vector<Row> rows;
  bool all_equal = true;

  for (unsigned n : {4u, 5u, 6u}) {
    const Qbf q = random_qbf(n, 3 * n, 12345 + n);
    const std::uint64_t p = smallest_session_prime(n);

    const auto t_serial = std::chrono::steady_clock::now();
    const Fp serial = quantified_value(q, p, EvalMode::Serial);
    const double serial_ms = ms_since(t_serial);

    const auto t_parallel = std::chrono::steady_clock::now();
    const Fp parallel = quantified_value(q, p, EvalMode::Parallel);
    const double parallel_ms = ms_since(t_parallel);

    all_equal = all_equal && serial == parallel;
    rows.push_back(Row{}
                       .add("kernel", std::string("quantified-value"))
                       .add("n", static_cast<std::uint64_t>(n))
                       .add("p", p)
                       .add("serial_ms", serial_ms)
                       .add("parallel_ms", parallel_ms)
                       .add("speedup", serial_ms / parallel_ms)
                       .add("checksum", serial.value())
                       .add("equal", serial == parallel));
  }

  // Sampled audit tally: the per-thread maps merge must not change counts.
  {
    PadSubject pad(257, {3, 99});
    const AuditMode mode = AuditMode::sample(200000, 1);

    const auto t = std::chrono::steady_clock::now();
    const ViewDistribution d = collect_view_distribution(pad, 0, mode);
    const double tally_ms = ms_since(t);
    const ViewDistribution again = collect_view_distribution(pad, 0, mode);

    const bool equal = d.counts == again.counts;
    all_equal = all_equal && equal;
    rows.push_back(Row{}
                       .add("kernel", std::string("audit-tally"))
                       .add("n", std::uint64_t{0})
                       .add("p", std::uint64_t{257})
                       .add("serial_ms", tally_ms)
                       .add("parallel_ms", tally_ms)
                       .add("speedup", 1.0)
                       .add("checksum", d.total)
                       .add("equal", equal));
  }

  std::cout << render_comment("serial reference vs parallel kernels",
                              ReportFormat::Table)
            << render_rows(rows, ReportFormat::Table);
  if (!all_equal) {
    std::cout << "checksum mismatch between kernels\n";
    return 1;
  }
  return 0;
}
