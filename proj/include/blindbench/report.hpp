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
#include <utility>
#include <variant>
#include <vector>

namespace blindbench {

// Tabular experiment output. Rows keep insertion order; the first row fixes
// the column set for table and CSV rendering (every row must share it).

using Value = std::variant<std::int64_t, std::uint64_t, double, bool,
                           std::string>;

std::string value_str(const Value& v);

struct Row {
  std::vector<std::pair<std::string, Value>> cells;

  Row& add(std::string name, Value v) {
    cells.emplace_back(std::move(name), std::move(v));
    return *this;
  }
  const Value* find(const std::string& name) const;

  bool operator==(const Row&) const = default;
};

enum class ReportFormat : std::uint8_t { Table, Csv, Jsonl };

// "table" | "csv" | "jsonl", anything else is a ConfigError.
ReportFormat parse_format(const std::string& name);
const char* format_str(ReportFormat f);

// Lines starting with '#' are comments in every format; render_comment
// produces one and the readers skip them.
std::string render_rows(const std::vector<Row>& rows, ReportFormat format);
std::string render_comment(const std::string& text, ReportFormat format);

// Round-trip readers for the machine formats. Numbers come back as
// uint64/int64/double by JSON type; CSV cells come back as strings.
std::vector<Row> parse_jsonl(const std::string& text);
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

}  // namespace blindbench
