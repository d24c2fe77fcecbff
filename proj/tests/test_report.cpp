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

#include <cstdint>
#include <string>
#include <vector>

#include "blindbench/errors.hpp"
#include "blindbench/report.hpp"

using namespace blindbench;

TEST_CASE("scalar rendering") {
  CHECK(value_str(Value{std::int64_t{-5}}) == "-5");
  CHECK(value_str(Value{std::uint64_t{18446744073709551615ULL}}) ==
        "18446744073709551615");
  CHECK(value_str(Value{0.5}) == "0.5");
  CHECK(value_str(Value{true}) == "true");
  CHECK(value_str(Value{false}) == "false");
  CHECK(value_str(Value{std::string("plain")}) == "plain");
  // Doubles render with round-trip precision.
  const std::string third = value_str(Value{1.0 / 3.0});
  CHECK(third.substr(0, 6) == "0.3333");
}

TEST_CASE("format names round-trip") {
  CHECK(parse_format("table") == ReportFormat::Table);
  CHECK(parse_format("csv") == ReportFormat::Csv);
  CHECK(parse_format("jsonl") == ReportFormat::Jsonl);
  CHECK(format_str(ReportFormat::Csv) == std::string("csv"));
  CHECK_THROWS_AS(parse_format("xml"), ConfigError);
}

TEST_CASE("table layout pads to the widest cell") {
  std::vector<Row> rows;
  rows.push_back(Row{}.add("name", std::string("a")).add("count",
                                                         std::uint64_t{100}));
  rows.push_back(
      Row{}.add("name", std::string("longer")).add("count", std::uint64_t{7}));
  const std::string expected =
      "name    count\n"
      "------  -----\n"
      "a       100  \n"
      "longer  7    \n";
  CHECK(render_rows(rows, ReportFormat::Table) == expected);
}

TEST_CASE("csv quotes only what needs quoting") {
  std::vector<Row> rows;
  rows.push_back(Row{}
                     .add("x", std::string("plain"))
                     .add("y", std::string("with,comma"))
                     .add("z", std::string("say \"hi\"")));
  const std::string expected =
      "x,y,z\n"
      "plain,\"with,comma\",\"say \"\"hi\"\"\"\n";
  CHECK(render_rows(rows, ReportFormat::Csv) == expected);
}

TEST_CASE("csv parser undoes the quoting and skips comments") {
  const auto cells = parse_csv(
      "# a comment line\n"
      "x,y\n"
      "\"with,comma\",\"say \"\"hi\"\"\"\n");
  REQUIRE(cells.size() == 2);
  CHECK(cells[0] == std::vector<std::string>{"x", "y"});
  CHECK(cells[1] == std::vector<std::string>{"with,comma", "say \"hi\""});
  CHECK_THROWS_AS(parse_csv("a,\"unterminated\n"), ParseError);
}

TEST_CASE("jsonl round-trips every scalar type") {
  std::vector<Row> rows;
  rows.push_back(Row{}
                     .add("i", std::int64_t{-3})
                     .add("u", std::uint64_t{12})
                     .add("d", 0.25)
                     .add("b", true)
                     .add("s", std::string("text")));
  rows.push_back(Row{}
                     .add("i", std::int64_t{9})
                     .add("u", std::uint64_t{0})
                     .add("d", -1.5)
                     .add("b", false)
                     .add("s", std::string("more")));
  const std::string text = render_rows(rows, ReportFormat::Jsonl);
  const std::vector<Row> back = parse_jsonl(render_comment("hdr", ReportFormat::Jsonl) + text);
  REQUIRE(back.size() == rows.size());
  // Nonnegative integers come back unsigned; everything else exact.
  CHECK(*back[0].find("i") == Value{std::int64_t{-3}});
  CHECK(*back[0].find("u") == Value{std::uint64_t{12}});
  CHECK(*back[0].find("d") == Value{0.25});
  CHECK(*back[0].find("b") == Value{true});
  CHECK(*back[0].find("s") == Value{std::string("text")});
  CHECK(*back[1].find("i") == Value{std::uint64_t{9}});
}

TEST_CASE("jsonl parser rejects malformed lines") {
  CHECK_THROWS_AS(parse_jsonl("{not json}\n"), ParseError);
  CHECK_THROWS_AS(parse_jsonl("[1,2]\n"), ParseError);
  CHECK_THROWS_AS(parse_jsonl("{\"a\":[1]}\n"), ParseError);
  CHECK(parse_jsonl("\n# comment\n").empty());
}

TEST_CASE("rows must agree on the column set") {
  std::vector<Row> rows;
  rows.push_back(Row{}.add("a", std::uint64_t{1}));
  rows.push_back(Row{}.add("b", std::uint64_t{2}));
  CHECK_THROWS_AS(render_rows(rows, ReportFormat::Table), DomainError);
  CHECK_THROWS_AS(render_rows(rows, ReportFormat::Csv), DomainError);
}

TEST_CASE("comments carry the leading hash") {
  CHECK(render_comment("note", ReportFormat::Table) == "# note\n");
  CHECK(render_comment("note", ReportFormat::Jsonl) == "# note\n");
}

TEST_CASE("row lookup") {
  const Row r = Row{}.add("k", std::uint64_t{4});
  REQUIRE(r.find("k") != nullptr);
  CHECK(r.find("missing") == nullptr);
  CHECK(render_rows({}, ReportFormat::Jsonl).empty());
}
