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

#include "blindbench/field.hpp"

namespace blindbench {

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  if (x % 2 == 0) return x == 2;
  for (std::uint64_t d = 3; d * d <= x; d += 2) {
    if (x % d == 0) return false;
  }
  return true;
}

std::uint64_t smallest_session_prime(unsigned n) {
  std::uint64_t n4 = 1;
  for (int i = 0; i < 4; ++i) n4 *= n;
  std::uint64_t candidate = n4 < 17 ? 17 : n4;
  while (!is_prime(candidate)) ++candidate;
  return candidate;
}

}  // namespace blindbench
