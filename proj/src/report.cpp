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

#include "blindbench/report.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "blindbench/errors.hpp"

namespace blindbench {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const Value& v) {
  return std::visit([](const auto& x) { return ordered_json(x); }, v);
}

}  // namespace

std::string value_str(const Value& v) {
  // JSON scalar serialization doubles as the plain-text cell format; it
  // keeps doubles round-trippable and quotes nothing.
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return to_json(v).dump();
}

const Value* Row::find(const std::string& name) const {
  for (const auto& [n, v] : cells)
    if (n == name) return &v;
  return nullptr;
}

ReportFormat parse_format(const std::string& name) {
  if (name == "table") return ReportFormat::Table;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "jsonl") return ReportFormat::Jsonl;
  throw ConfigError("unknown format '" + name +
                    "' (expected table, csv, or jsonl)");
}

const char* format_str(ReportFormat f) {
  switch (f) {
    case ReportFormat::Table:
      return "table";
    case ReportFormat::Csv:
      return "csv";
    case ReportFormat::Jsonl:
      return "jsonl";
  }
  return "?";
}

namespace {

void check_shape(const std::vector<Row>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].cells.size() != rows[0].cells.size())
      throw DomainError("rows disagree on column count");
    for (std::size_t c = 0; c < rows[i].cells.size(); ++c)
      if (rows[i].cells[c].first != rows[0].cells[c].first)
        throw DomainError("rows disagree on column names");
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_table(const std::vector<Row>& rows) {
  check_shape(rows);
  if (rows.empty()) return "";
  const std::size_t cols = rows[0].cells.size();
  std::vector<std::size_t> width(cols);
  for (std::size_t c = 0; c < cols; ++c)
    width[c] = rows[0].cells[c].first.size();
  for (const Row& r : rows)
    for (std::size_t c = 0; c < cols; ++c)
      width[c] = std::max(width[c], value_str(r.cells[c].second).size());

  std::ostringstream os;
  const auto line = [&](const auto& cell_text) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string text = cell_text(c);
      os << text << std::string(width[c] - text.size(), ' ');
      os << (c + 1 < cols ? "  " : "");
    }
    os << "\n";
  };
  line([&](std::size_t c) { return rows[0].cells[c].first; });
  line([&](std::size_t c) { return std::string(width[c], '-'); });
  for (const Row& r : rows)
    line([&](std::size_t c) { return value_str(r.cells[c].second); });
  return os.str();
}

std::string render_csv(const std::vector<Row>& rows) {
  check_shape(rows);
  if (rows.empty()) return "";
  std::ostringstream os;
  for (std::size_t c = 0; c < rows[0].cells.size(); ++c)
    os << (c ? "," : "") << csv_escape(rows[0].cells[c].first);
  os << "\n";
  for (const Row& r : rows) {
    for (std::size_t c = 0; c < r.cells.size(); ++c)
      os << (c ? "," : "") << csv_escape(value_str(r.cells[c].second));
    os << "\n";
  }
  return os.str();
}

std::string render_jsonl(const std::vector<Row>& rows) {
  std::ostringstream os;
  for (const Row& r : rows) {
    ordered_json obj = ordered_json::object();
    for (const auto& [name, v] : r.cells) obj[name] = to_json(v);
    os << obj.dump() << "\n";
  }
  return os.str();
}

}  // namespace

std::string render_rows(const std::vector<Row>& rows, ReportFormat format) {
  switch (format) {
    case ReportFormat::Table:
      return render_table(rows);
    case ReportFormat::Csv:
      return render_csv(rows);
    case ReportFormat::Jsonl:
      return render_jsonl(rows);
  }
  return "";
}

std::string render_comment(const std::string& text, ReportFormat) {
  return "# " + text + "\n";
}

std::vector<Row> parse_jsonl(const std::string& text) {
  std::vector<Row> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    ordered_json obj;
    try {
      obj = ordered_json::parse(line);
    } catch (const ordered_json::parse_error& e) {
      throw ParseError(rows.size() + 1, 1, std::string("bad jsonl: ") +
                                               e.what());
    }
    if (!obj.is_object())
      throw ParseError(rows.size() + 1, 1, "jsonl line is not an object");
    Row row;
    for (const auto& [name, v] : obj.items()) {
      if (v.is_boolean())
        row.add(name, v.get<bool>());
      else if (v.is_number_unsigned())
        row.add(name, v.get<std::uint64_t>());
      else if (v.is_number_integer())
        row.add(name, v.get<std::int64_t>());
      else if (v.is_number_float())
        row.add(name, v.get<double>());
      else if (v.is_string())
        row.add(name, v.get<std::string>());
      else
        throw ParseError(rows.size() + 1, 1, "unsupported jsonl cell type");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (text[i] == '#') {  // comment line
      while (i < n && text[i] != '\n') ++i;
      if (i < n) ++i;
      continue;
    }
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    bool line_done = false;
    bool any = false;
    while (i < n && !line_done) {
      const char c = text[i];
      if (quoted) {
        if (c == '"' && i + 1 < n && text[i + 1] == '"') {
          cur += '"';
          i += 2;
        } else if (c == '"') {
          quoted = false;
          ++i;
        } else {
          cur += c;
          ++i;
        }
      } else if (c == '"' && cur.empty()) {
        quoted = true;
        any = true;
        ++i;
      } else if (c == ',') {
        fields.push_back(std::move(cur));
        cur.clear();
        any = true;
        ++i;
      } else if (c == '\n') {
        line_done = true;
        ++i;
      } else {
        cur += c;
        any = true;
        ++i;
      }
    }
    if (quoted) throw ParseError(out.size() + 1, 1, "unterminated csv quote");
    if (any || !fields.empty()) {
      fields.push_back(std::move(cur));
      out.push_back(std::move(fields));
    }
  }
  return out;
}

}  // namespace blindbench
