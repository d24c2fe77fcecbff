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

#include "blindbench/qbf.hpp"

#include <algorithm>

#include "blindbench/errors.hpp"
#include "blindbench/rng.hpp"

namespace blindbench {

std::int32_t Formula::add_var(std::int32_t id) {
  nodes_.push_back({Op::Var, id, 0});
  return root();
}

std::int32_t Formula::add_not(std::int32_t child) {
  nodes_.push_back({Op::Not, child, 0});
  return root();
}

std::int32_t Formula::add_bin(Op op, std::int32_t l, std::int32_t r) {
  nodes_.push_back({op, l, r});
  return root();
}

bool Formula::eval(const std::vector<std::uint8_t>& values,
                   std::vector<std::uint8_t>& scratch) const {
  scratch.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& nd = nodes_[i];
    switch (nd.op) {
      case Op::Var: scratch[i] = values[nd.a]; break;
      case Op::Not: scratch[i] = !scratch[nd.a]; break;
      case Op::And: scratch[i] = scratch[nd.a] && scratch[nd.b]; break;
      case Op::Or: scratch[i] = scratch[nd.a] || scratch[nd.b]; break;
    }
  }
  return scratch[nodes_.size() - 1] != 0;
}

Fp Formula::eval_field(const std::vector<Fp>& assign,
                       std::vector<Fp>& scratch) const {
  scratch.resize(nodes_.size());
  const std::uint64_t p = assign.empty() ? 0 : assign[0].modulus();
  const Fp one = Fp::one(p);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& nd = nodes_[i];
    switch (nd.op) {
      case Op::Var: scratch[i] = assign[nd.a]; break;
      case Op::Not: scratch[i] = one - scratch[nd.a]; break;
      case Op::And: scratch[i] = scratch[nd.a] * scratch[nd.b]; break;
      case Op::Or:
        scratch[i] = one - (one - scratch[nd.a]) * (one - scratch[nd.b]);
        break;
    }
  }
  return scratch[nodes_.size() - 1];
}

std::vector<std::uint32_t> Formula::occurrence_counts(unsigned n) const {
  std::vector<std::uint32_t> occ(n + 1, 0);
  for (const Node& nd : nodes_) {
    if (nd.op == Op::Var) ++occ[nd.a];
  }
  return occ;
}

std::string Formula::str() const {
  // Children precede parents, so one forward pass can assemble the text.
  std::vector<std::string> text(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& nd = nodes_[i];
    switch (nd.op) {
      case Op::Var: text[i] = std::to_string(nd.a); break;
      case Op::Not: text[i] = "(not " + text[nd.a] + ")"; break;
      case Op::And: text[i] = "(and " + text[nd.a] + " " + text[nd.b] + ")"; break;
      case Op::Or: text[i] = "(or " + text[nd.a] + " " + text[nd.b] + ")"; break;
    }
  }
  return text[nodes_.size() - 1];
}

Leakage leakage(const Qbf& q) { return {q.var_count(), q.matrix.node_count()}; }

std::string Leakage::str() const {
  return "(n=" + std::to_string(n) + ",nodes=" + std::to_string(matrix_nodes) +
         ")";
}

namespace {

struct Token {
  enum class Kind { Word, Int, LParen, RParen, End };
  Kind kind;
  std::string word;
  std::int64_t value = 0;
  std::size_t line = 0;
  std::size_t col = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) {
      t.kind = Token::Kind::End;
      return t;
    }
    char c = text_[pos_];
    if (c == '(') {
      advance();
      t.kind = Token::Kind::LParen;
      return t;
    }
    if (c == ')') {
      advance();
      t.kind = Token::Kind::RParen;
      return t;
    }
    if (c >= '0' && c <= '9') {
      t.kind = Token::Kind::Int;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
        t.value = t.value * 10 + (text_[pos_] - '0');
        if (t.value > 1000000)
          throw ParseError(t.line, t.col, "number out of range");
        advance();
      }
      return t;
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      t.kind = Token::Kind::Word;
      while (pos_ < text_.size() && ((text_[pos_] >= 'a' && text_[pos_] <= 'z') ||
                                     (text_[pos_] >= 'A' && text_[pos_] <= 'Z'))) {
        t.word += text_[pos_];
        advance();
      }
      return t;
    }
    throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { shift(); }

  Qbf run() {
    Qbf q;
    expect_word("p", "expected 'p qbf <n>' header");
    expect_word("qbf", "expected 'qbf' after 'p'");
    if (cur_.kind != Token::Kind::Int || cur_.value < 1)
      fail("expected variable count after 'p qbf'");
    const unsigned n = static_cast<unsigned>(cur_.value);
    shift();

    q.prefix.assign(n, Quantifier::Forall);
    std::vector<std::uint8_t> bound(n + 1, 0);
    std::size_t bound_count = 0;
    while (cur_.kind == Token::Kind::Word && (cur_.word == "a" || cur_.word == "e")) {
      const Quantifier kind =
          cur_.word == "a" ? Quantifier::Forall : Quantifier::Exists;
      shift();
      bool saw_var = false;
      while (true) {
        if (cur_.kind != Token::Kind::Int)
          fail("expected variable id or terminating 0 in quantifier line");
        if (cur_.value == 0) {
          shift();
          break;
        }
        const std::int64_t v = cur_.value;
        if (v > n)
          fail("variable " + std::to_string(v) + " out of range 1.." +
               std::to_string(n));
        if (bound[v]) fail("variable " + std::to_string(v) + " quantified twice");
        bound[v] = 1;
        ++bound_count;
        q.prefix[v - 1] = kind;
        saw_var = true;
        shift();
      }
      if (!saw_var) fail("empty quantifier line");
    }
    if (bound_count != n)
      fail("prefix binds " + std::to_string(bound_count) + " of " +
           std::to_string(n) + " variables");

    parse_expr(q.matrix, bound);
    if (cur_.kind == Token::Kind::Int && cur_.value == 0) shift();
    if (cur_.kind != Token::Kind::End) fail("trailing input after formula body");
    return q;
  }

 private:
  // Binding order is textual order of the quantifier lines, but variable v
  // is always bound by prefix[v - 1]; the format requires ids 1..n, so the
  // two agree once all variables are seen.
  std::int32_t parse_expr(Formula& f, const std::vector<std::uint8_t>& bound) {
    if (cur_.kind == Token::Kind::Int) {
      if (cur_.value == 0) fail("0 is not a variable id");
      if (static_cast<std::size_t>(cur_.value) >= bound.size() ||
          !bound[cur_.value])
        fail("free variable " + std::to_string(cur_.value) + " in matrix");
      std::int32_t idx = f.add_var(static_cast<std::int32_t>(cur_.value));
      shift();
      return idx;
    }
    if (cur_.kind != Token::Kind::LParen) fail("expected '(' or variable id");
    shift();
    if (cur_.kind != Token::Kind::Word) fail("expected operator and/or/not");
    const std::string op = cur_.word;
    shift();
    if (op == "not") {
      std::int32_t child = parse_expr(f, bound);
      expect_rparen();
      return f.add_not(child);
    }
    if (op != "and" && op != "or") fail("unknown operator '" + op + "'");
    const Formula::Op kind = op == "and" ? Formula::Op::And : Formula::Op::Or;
    std::int32_t acc = parse_expr(f, bound);
    std::size_t args = 1;
    while (cur_.kind != Token::Kind::RParen) {
      std::int32_t rhs = parse_expr(f, bound);
      acc = f.add_bin(kind, acc, rhs);
      ++args;
    }
    if (args < 2) fail("'" + op + "' needs at least 2 arguments");
    shift();
    return acc;
  }

  void expect_word(const std::string& w, const std::string& msg) {
    if (cur_.kind != Token::Kind::Word || cur_.word != w) fail(msg);
    shift();
  }

  void expect_rparen() {
    if (cur_.kind != Token::Kind::RParen) fail("expected ')'");
    shift();
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(cur_.line, cur_.col, msg);
  }

  void shift() { cur_ = lex_.next(); }

  Lexer lex_;
  Token cur_;
};

}  // namespace

Qbf parse_qbf(const std::string& text) { return Parser(text).run(); }

std::string print_qbf(const Qbf& q) {
  std::string out = "p qbf " + std::to_string(q.var_count()) + "\n";
  for (unsigned v = 1; v <= q.var_count(); ++v) {
    out += q.prefix[v - 1] == Quantifier::Forall ? "a " : "e ";
    out += std::to_string(v) + " 0\n";
  }
  out += q.matrix.str() + "\n";
  return out;
}

bool brute_force_truth(const Qbf& q, unsigned max_vars) {
  const unsigned n = q.var_count();
  if (n > max_vars)
    throw ConfigError("brute force truth capped at " + std::to_string(max_vars) +
                      " variables, instance has " + std::to_string(n));
  std::vector<std::uint8_t> values(n + 1, 0);
  std::vector<std::uint8_t> scratch;
  // Iterative deepening over the prefix done recursively; n <= 20.
  struct Rec {
    const Qbf& q;
    std::vector<std::uint8_t>& values;
    std::vector<std::uint8_t>& scratch;
    bool at(unsigned v) {
      if (v > q.var_count()) return q.matrix.eval(values, scratch);
      values[v] = 0;
      bool f0 = at(v + 1);
      values[v] = 1;
      bool f1 = at(v + 1);
      return q.prefix[v - 1] == Quantifier::Forall ? (f0 && f1) : (f0 || f1);
    }
  };
  Rec rec{q, values, scratch};
  return rec.at(1);
}

namespace {

// Builds a subtree of exactly `budget` nodes containing every variable in
// `required` (each as one leaf) plus uniform filler leaves.
std::int32_t grow(Formula& f, unsigned n, std::size_t budget,
                  std::vector<std::int32_t>& required, SplitMix64& rng) {
  const std::size_t need = required.size();
  if (budget == 1) {
    std::int32_t v = need == 1 ? required[0]
                               : static_cast<std::int32_t>(rng.next_below(n) + 1);
    return f.add_var(v);
  }
  if (budget == 2 || (budget >= 2 && need <= 1 && rng.next_below(4) == 0)) {
    std::int32_t child = grow(f, n, budget - 1, required, rng);
    return f.add_not(child);
  }
  // Binary node: split the required variables, then the remaining budget.
  std::vector<std::int32_t> left_req, right_req;
  for (std::int32_t v : required)
    (rng.next_below(2) == 0 ? left_req : right_req).push_back(v);
  std::size_t left_min = left_req.empty() ? 1 : 2 * left_req.size() - 1;
  std::size_t right_min = right_req.empty() ? 1 : 2 * right_req.size() - 1;
  while (left_min + right_min > budget - 1) {
    // Rebalance: move one required variable to the lighter side.
    if (left_min > right_min) {
      right_req.push_back(left_req.back());
      left_req.pop_back();
    } else {
      left_req.push_back(right_req.back());
      right_req.pop_back();
    }
    left_min = left_req.empty() ? 1 : 2 * left_req.size() - 1;
    right_min = right_req.empty() ? 1 : 2 * right_req.size() - 1;
  }
  const std::size_t slack = budget - 1 - left_min - right_min;
  const std::size_t left_budget = left_min + rng.next_below(slack + 1);
  const std::size_t right_budget = budget - 1 - left_budget;
  std::int32_t l = grow(f, n, left_budget, left_req, rng);
  std::int32_t r = grow(f, n, right_budget, right_req, rng);
  const Formula::Op op = rng.next_below(2) == 0 ? Formula::Op::And : Formula::Op::Or;
  return f.add_bin(op, l, r);
}

}  // namespace

Qbf random_qbf(unsigned n, std::size_t size, std::uint64_t seed) {
  if (n < 1) throw ConfigError("random_qbf needs n >= 1");
  SplitMix64 rng(seed ^ 0x71bf5e3a2c9d4401ULL);
  Qbf q;
  q.prefix.reserve(n);
  for (unsigned i = 0; i < n; ++i)
    q.prefix.push_back(rng.next_below(2) == 0 ? Quantifier::Forall
                                              : Quantifier::Exists);
  std::size_t budget = std::max<std::size_t>(size, 2 * n - 1);
  std::vector<std::int32_t> required;
  for (unsigned v = 1; v <= n; ++v) required.push_back(static_cast<std::int32_t>(v));
  // Shuffle so variable order in the tree is not the identity.
  for (std::size_t i = required.size(); i > 1; --i)
    std::swap(required[i - 1], required[rng.next_below(i)]);
  grow(q.matrix, n, budget, required, rng);
  return q;
}

}  // namespace blindbench
