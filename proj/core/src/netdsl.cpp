// Copyright 2026 The qdn Authors
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

#include "qdn/netdsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace qdn {

namespace {

enum class Tok {
  kName,
  kNumber,
  kComma,
  kAt,
  kLBrace,
  kRBrace,
  kLParen,
  kRParen,
  kStar,
  kSlash,
  kPlus,
  kMinus,
  kArrow,     // ->
  kFatArrow,  // =>
  kEnd,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  int column = 0;  // 1-based
  int end_column = 0;
  double number = 0.0;
  bool integral = false;
};

struct SyntaxError {
  int column;
  std::string message;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::kEnd:
      return "end of line";
    case Tok::kName:
      return "'" + t.text + "'";
    case Tok::kNumber:
      return "number " + t.text;
    default:
      return "'" + t.text + "'";
  }
}

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Tokens of one line; comments dropped; always ends with kEnd.
std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto col = [](std::size_t k) { return static_cast<int>(k) + 1; };
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.column = col(i);
    if (is_name_start(c)) {
      std::size_t j = i;
      while (j < line.size() && is_name_char(line[j])) ++j;
      t.kind = Tok::kName;
      t.text = std::string(line.substr(i, j - i));
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && i + 1 < line.size() &&
                std::isdigit(static_cast<unsigned char>(line[i + 1])))) {
      std::size_t j = i;
      bool integral = true;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      if (j < line.size() && line[j] == '.') {
        integral = false;
        ++j;
        while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      }
      if (j < line.size() && (line[j] == 'e' || line[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < line.size() && (line[k] == '+' || line[k] == '-')) ++k;
        if (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) {
          integral = false;
          j = k;
          while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
        }
      }
      t.kind = Tok::kNumber;
      t.text = std::string(line.substr(i, j - i));
      t.integral = integral;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
      if (ec != std::errc{}) {
        throw SyntaxError{t.column, "malformed number '" + t.text + "'"};
      }
      i = j;
    } else {
      auto two = line.substr(i, 2);
      if (two == "->") {
        t.kind = Tok::kArrow;
        t.text = "->";
        i += 2;
      } else if (two == "=>") {
        t.kind = Tok::kFatArrow;
        t.text = "=>";
        i += 2;
      } else {
        switch (c) {
          case ',': t.kind = Tok::kComma; break;
          case '@': t.kind = Tok::kAt; break;
          case '{': t.kind = Tok::kLBrace; break;
          case '}': t.kind = Tok::kRBrace; break;
          case '(': t.kind = Tok::kLParen; break;
          case ')': t.kind = Tok::kRParen; break;
          case '*': t.kind = Tok::kStar; break;
          case '/': t.kind = Tok::kSlash; break;
          case '+': t.kind = Tok::kPlus; break;
          case '-': t.kind = Tok::kMinus; break;
          default:
            throw SyntaxError{t.column, std::string("unexpected character '") + c + "'"};
        }
        t.text = std::string(1, c);
        ++i;
      }
    }
    t.end_column = col(i);
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::kEnd;
  end.column = col(std::min(line.size(), line.find('#')));
  end.end_column = end.column;
  out.push_back(end);
  return out;
}

const std::set<std::string, std::less<>> kKeywords = {
    "network", "param", "stage", "suo",  "rank", "basis",
    "init",    "term",  "map",   "rule", "i",    "pi",
    "sin",     "cos",   "sqrt",  "cis"};

bool is_suo_name(std::string_view s) {
  return s.size() >= 2 && s[0] == 's' &&
         std::all_of(s.begin() + 1, s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::optional<ExprFunction> function_named(std::string_view s) {
  if (s == "sin") return ExprFunction::kSin;
  if (s == "cos") return ExprFunction::kCos;
  if (s == "sqrt") return ExprFunction::kSqrt;
  if (s == "cis") return ExprFunction::kCis;
  return std::nullopt;
}

// Basis element as written: "s2@{1,3}" or "@{1}".
struct ElementRef {
  std::optional<int> suo;
  std::vector<std::pair<long long, int>> detectors;  // value, column
  int column = 0;
};

struct NameRef {
  std::string name;
  int column;
};

class LineParser {
 public:
  explicit LineParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& t, const std::string& what) const {
    throw SyntaxError{t.column, "expected " + what + ", found " + describe(t)};
  }

  const Token& expect(Tok k, const std::string& what) {
    if (!at(k)) fail(peek(), what);
    return next();
  }

  void expect_keyword(std::string_view kw) {
    if (!at(Tok::kName) || peek().text != kw) fail(peek(), "'" + std::string(kw) + "'");
    next();
  }

  long long expect_int(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Tok::kNumber || !t.integral) fail(t, what);
    next();
    return static_cast<long long>(t.number);
  }

  std::string expect_name(const std::string& what) {
    return expect(Tok::kName, what).text;
  }

  void expect_end() {
    if (!at(Tok::kEnd)) fail(peek(), "end of line");
  }

  bool element_starts_here(std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    if (t.kind == Tok::kAt) return true;
    return t.kind == Tok::kName && is_suo_name(t.text) &&
           peek(ahead + 1).kind == Tok::kAt;
  }

  ElementRef element() {
    ElementRef ref;
    ref.column = peek().column;
    if (at(Tok::kName)) {
      const Token& t = next();
      if (!is_suo_name(t.text)) fail(t, "basis element such as s1@{1}");
      long long idx = 0;
      auto [p, ec] = std::from_chars(t.text.data() + 1, t.text.data() + t.text.size(), idx);
      if (ec != std::errc{} || idx > 1'000'000) {
        throw SyntaxError{t.column, "SUO index in '" + t.text + "' is out of range"};
      }
      ref.suo = static_cast<int>(idx);
    }
    expect(Tok::kAt, "'@' in basis element");
    expect(Tok::kLBrace, "'{' opening a detector set");
    if (!at(Tok::kRBrace)) {
      for (;;) {
        const Token& t = peek();
        if (t.kind == Tok::kMinus) {
          throw SyntaxError{t.column, "detector index must be a positive integer"};
        }
        const long long m = expect_int("detector index");
        ref.detectors.emplace_back(m, t.column);
        if (at(Tok::kComma)) {
          next();
          continue;
        }
        break;
      }
    }
    expect(Tok::kRBrace, "',' or '}' in detector set");
    return ref;
  }

  Expr expression() { return sum(); }

  const std::vector<NameRef>& names() const { return names_; }

 private:
  Expr sum() {
    Expr lhs = product();
    for (;;) {
      if (at(Tok::kPlus)) {
        next();
        lhs = Expr::sum(lhs, product());
      } else if (at(Tok::kMinus)) {
        next();
        lhs = Expr::sum(lhs, Expr::negate(product()));
      } else {
        return lhs;
      }
    }
  }

  Expr product() {
    Expr lhs = unary();
    for (;;) {
      if (at(Tok::kStar) && !element_starts_here(1)) {
        next();
        lhs = Expr::product(lhs, unary());
      } else if (at(Tok::kSlash)) {
        next();
        lhs = Expr::quotient(lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (at(Tok::kMinus)) {
      next();
      if (at(Tok::kNumber)) return number(true);
      return Expr::negate(unary());
    }
    return primary();
  }

  // A number directly followed by a name or '(' ("2pi") is a product.
  Expr number(bool negated) {
    const Token& t = next();
    Expr lit = Expr::literal(negated ? -t.number : t.number);
    const Token& after = peek();
    if (after.column == t.end_column &&
        ((after.kind == Tok::kName && !element_starts_here()) ||
         after.kind == Tok::kLParen)) {
      return Expr::product(lit, primary());
    }
    return lit;
  }

  Expr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kNumber:
        return number(false);
      case Tok::kLParen: {
        next();
        Expr inner = sum();
        expect(Tok::kRParen, "')'");
        return inner;
      }
      case Tok::kName: {
        if (element_starts_here()) fail(t, "expression before '*' and basis element");
        next();
        if (t.text == "i") return Expr::imaginary_unit();
        if (t.text == "pi") return Expr::literal(std::numbers::pi);
        if (auto fn = function_named(t.text)) {
          expect(Tok::kLParen, "'(' after " + t.text);
          Expr arg = sum();
          expect(Tok::kRParen, "')'");
          return Expr::apply(*fn, arg);
        }
        names_.push_back({t.text, t.column});
        return Expr::parameter(t.text);
      }
      default:
        fail(t, "expression");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<NameRef> names_;
};

// ---------------------------------------------------------------------------
// First pass: raw declarations with positions.

struct RawTerm {
  Expr amplitude;
  ElementRef element;
};

struct RawStage {
  long long index, suo, rank;
  Location where;
  std::vector<std::pair<ElementRef, int>> basis;  // element, line
};

struct RawRule {
  ElementRef source;
  std::vector<RawTerm> terms;
  int line;
};

struct RawMap {
  long long from, to;
  Location where;
  std::vector<RawRule> rules;
};

struct RawInitTerm {
  RawTerm term;
  int line;
};

struct RawNetwork {
  std::string name;
  std::vector<std::pair<std::string, Location>> params;
  std::vector<RawStage> stages;
  std::optional<Location> init;
  std::vector<RawInitTerm> init_terms;
  std::vector<RawMap> maps;
  std::vector<std::pair<NameRef, int>> name_refs;  // with line
};

class NetworkParser {
 public:
  ParseResult run(std::string_view text) {
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      parse_line(line, line_no);
      if (end == text.size()) break;
      start = end + 1;
    }
    last_line_ = line_no;
    if (!seen_network_ && !has_errors(diags_)) {
      error({1, 1}, "missing 'network NAME' header");
    }
    if (has_errors(diags_)) return finish();
    resolve();
    return finish();
  }

 private:
  enum class Block { kNone, kStage, kInit, kMap };

  void error(Location where, std::string msg) {
    diags_.push_back({Severity::kError, where, std::move(msg)});
  }

  void parse_line(std::string_view line, int line_no) {
    std::vector<Token> toks;
    try {
      toks = tokenize(line);
    } catch (const SyntaxError& e) {
      error({line_no, e.column}, e.message);
      return;
    }
    if (toks.front().kind == Tok::kEnd) return;
    LineParser p(std::move(toks));
    try {
      dispatch(p, line_no);
      for (const auto& n : p.names()) raw_.name_refs.push_back({n, line_no});
    } catch (const SyntaxError& e) {
      error({line_no, e.column}, e.message);
    }
  }

  void dispatch(LineParser& p, int line_no) {
    const Token& head = p.peek();
    if (head.kind != Tok::kName) p.fail(head, "a declaration keyword");
    const std::string kw = head.text;
    const Location where{line_no, head.column};

    if (!seen_network_ && kw != "network") {
      throw SyntaxError{head.column, "expected 'network NAME' before " + describe(head)};
    }
    p.next();
    if (kw == "network") {
      if (seen_network_) throw SyntaxError{head.column, "duplicate 'network' header"};
      raw_.name = p.expect_name("network name");
      p.expect_end();
      seen_network_ = true;
      block_ = Block::kNone;
    } else if (kw == "param") {
      for (;;) {
        const Token& t = p.peek();
        const std::string name = p.expect_name("parameter name");
        raw_.params.push_back({name, {line_no, t.column}});
        if (p.at(Tok::kComma)) {
          p.next();
          continue;
        }
        break;
      }
      p.expect_end();
      block_ = Block::kNone;
    } else if (kw == "stage") {
      RawStage s{};
      s.where = where;
      s.index = p.expect_int("stage index");
      p.expect_keyword("suo");
      s.suo = p.expect_int("SUO dimension");
      p.expect_keyword("rank");
      s.rank = p.expect_int("register rank");
      p.expect_end();
      raw_.stages.push_back(std::move(s));
      block_ = Block::kStage;
    } else if (kw == "basis") {
      if (block_ != Block::kStage) {
        throw SyntaxError{head.column, "'basis' outside a stage declaration"};
      }
      ElementRef e = p.element();
      p.expect_end();
      raw_.stages.back().basis.push_back({std::move(e), line_no});
    } else if (kw == "init") {
      if (raw_.init) {
        throw SyntaxError{head.column, "duplicate 'init' block (first at line " +
                                           std::to_string(raw_.init->line) + ")"};
      }
      p.expect_end();
      raw_.init = where;
      block_ = Block::kInit;
    } else if (kw == "term") {
      if (block_ != Block::kInit) {
        throw SyntaxError{head.column, "'term' outside an init block"};
      }
      RawTerm t = term(p);
      p.expect_end();
      raw_.init_terms.push_back({std::move(t), line_no});
    } else if (kw == "map") {
      RawMap m{};
      m.where = where;
      m.from = p.expect_int("source stage index");
      p.expect(Tok::kArrow, "'->'");
      m.to = p.expect_int("target stage index");
      p.expect_end();
      raw_.maps.push_back(std::move(m));
      block_ = Block::kMap;
    } else if (kw == "rule") {
      if (block_ != Block::kMap) {
        throw SyntaxError{head.column, "'rule' outside a map block"};
      }
      RawRule r;
      r.line = line_no;
      r.source = p.element();
      p.expect(Tok::kFatArrow, "'=>'");
      r.terms.push_back(term(p));
      while (p.at(Tok::kPlus)) {
        p.next();
        r.terms.push_back(term(p));
      }
      p.expect_end();
      raw_.maps.back().rules.push_back(std::move(r));
    } else {
      throw SyntaxError{head.column, "unknown declaration '" + kw + "'"};
    }
  }

  RawTerm term(LineParser& p) {
    RawTerm t;
    t.amplitude = p.expression();
    p.expect(Tok::kStar, "'*' before basis element");
    if (!p.element_starts_here()) p.fail(p.peek(), "basis element such as s1@{1}");
    t.element = p.element();
    return t;
  }

  // -------------------------------------------------------------------------
  // Second pass: semantic checks and construction.

  std::optional<BasisElement> resolve_element(const ElementRef& ref, int line,
                                              const RawStage& stage) {
    Label label = 0;
    for (const auto& [m, column] : ref.detectors) {
      if (m < 1) {
        error({line, column}, "detector index " + std::to_string(m) +
                                  " is not a positive integer");
        return std::nullopt;
      }
      if (m > stage.rank) {
        const std::string label_text =
            m <= 62 ? std::to_string(1ULL << (m - 1)) : "2^" + std::to_string(m - 1);
        error({line, column}, "label " + label_text +
                                  " exceeds register of rank " +
                                  std::to_string(stage.rank));
        return std::nullopt;
      }
      const Label bit = Label{1} << (m - 1);
      if (label & bit) {
        error({line, column}, "detector " + std::to_string(m) +
                                  " listed twice in one basis element");
        return std::nullopt;
      }
      label |= bit;
    }
    int suo = 1;
    if (ref.suo) {
      suo = *ref.suo;
      if (suo < 1 || suo > stage.suo) {
        error({line, ref.column}, "SUO index s" + std::to_string(suo) +
                                      " outside 1.." + std::to_string(stage.suo) +
                                      " of stage " + std::to_string(stage.index));
        return std::nullopt;
      }
    } else if (stage.suo != 1) {
      error({line, ref.column}, "SUO index required on stage " +
                                    std::to_string(stage.index) +
                                    " (SUO dimension " + std::to_string(stage.suo) + ")");
      return std::nullopt;
    }
    return BasisElement{suo, label};
  }

  // Resolves `ref` and requires it to be declared in stage `k`.
  std::optional<BasisElement> declared_element(const ElementRef& ref, int line,
                                               std::size_t k) {
    auto e = resolve_element(ref, line, raw_.stages[k]);
    if (!e) return std::nullopt;
    if (!stages_[k]->contains(*e)) {
      error({line, ref.column}, "basis element " + to_string(*e) +
                                    " is not declared in stage " + std::to_string(k));
      return std::nullopt;
    }
    return e;
  }

  void resolve() {
    NetworkDescription net;
    net.name = raw_.name;

    // parameters
    std::map<std::string, Location> declared;
    for (const auto& [name, where] : raw_.params) {
      if (kKeywords.contains(name) || is_suo_name(name)) {
        error(where, "parameter '" + name + "' shadows a reserved name");
        continue;
      }
      auto [it, fresh] = declared.emplace(name, where);
      if (!fresh) {
        error(where, "parameter '" + name + "' already declared at line " +
                         std::to_string(it->second.line));
        continue;
      }
      net.parameters.push_back(name);
      net.source.parameters.push_back(where);
    }
    for (const auto& [ref, line] : raw_.name_refs) {
      if (!declared.contains(ref.name)) {
        error({line, ref.column}, "undeclared parameter '" + ref.name + "'");
      }
    }

    // stages
    if (raw_.stages.empty()) {
      error({last_line_ > 0 ? last_line_ : 1, 1}, "network declares no stages");
      return;
    }
    bool stages_ok = true;
    for (std::size_t k = 0; k < raw_.stages.size(); ++k) {
      auto& s = raw_.stages[k];
      if (s.index != static_cast<long long>(k)) {
        error(s.where, "stage " + std::to_string(s.index) +
                           " declared where stage " + std::to_string(k) +
                           " was expected (stages are numbered 0, 1, ... in order)");
        stages_ok = false;
        continue;
      }
      if (s.suo < 1) {
        error(s.where, "SUO dimension must be at least 1");
        stages_ok = false;
        continue;
      }
      if (s.rank < 0 || s.rank > kMaxRegisterRank) {
        error(s.where, "register rank must lie in 0.." + std::to_string(kMaxRegisterRank));
        stages_ok = false;
        continue;
      }
      std::vector<BasisElement> basis;
      std::map<BasisElement, int> seen;
      for (const auto& [ref, line] : s.basis) {
        auto e = resolve_element(ref, line, s);
        if (!e) {
          stages_ok = false;
          continue;
        }
        auto [it, fresh] = seen.emplace(*e, line);
        if (!fresh) {
          error({line, ref.column}, "duplicate basis element " + to_string(*e) +
                                        " (first at line " + std::to_string(it->second) + ")");
          stages_ok = false;
          continue;
        }
        basis.push_back(*e);
      }
      if (stages_ok) {
        stages_.push_back(make_stage(static_cast<int>(s.index), static_cast<int>(s.suo),
                                     static_cast<int>(s.rank), std::move(basis)));
        net.source.stages.push_back(s.where);
      }
    }
    if (!stages_ok) return;
    net.stages = stages_;

    // initial state
    if (raw_.init) net.source.init = *raw_.init;
    for (const auto& [t, line] : raw_.init_terms) {
      auto e = declared_element(t.element, line, 0);
      if (e) net.initial_state.push_back({*e, t.amplitude});
    }

    // maps
    std::map<long long, const RawMap*> by_source;
    for (const auto& m : raw_.maps) {
      const auto n = static_cast<long long>(stages_.size());
      if (m.from < 0 || m.from >= n) {
        error(m.where, "map source stage " + std::to_string(m.from) + " is not declared");
        continue;
      }
      if (m.to < 0 || m.to >= n) {
        error(m.where, "map target stage " + std::to_string(m.to) + " is not declared");
        continue;
      }
      if (m.to != m.from + 1) {
        error(m.where, "map " + std::to_string(m.from) + " -> " + std::to_string(m.to) +
                           " must connect consecutive stages");
        continue;
      }
      auto [it, fresh] = by_source.emplace(m.from, &m);
      if (!fresh) {
        error(m.where, "duplicate map " + std::to_string(m.from) + " -> " +
                           std::to_string(m.to) + " (first at line " +
                           std::to_string(it->second->where.line) + ")");
      }
    }
    if (has_errors(diags_)) return;

    for (const auto& [from, m] : by_source) {
      const auto src = static_cast<std::size_t>(m->from);
      const auto dst = static_cast<std::size_t>(m->to);
      std::vector<Rule> rules;
      std::map<BasisElement, int> rule_lines;
      for (const auto& r : m->rules) {
        auto source = declared_element(r.source, r.line, src);
        Rule rule;
        bool ok = source.has_value();
        for (const auto& t : r.terms) {
          auto target = declared_element(t.element, r.line, dst);
          if (!target) {
            ok = false;
            continue;
          }
          rule.terms.push_back({*target, t.amplitude});
        }
        if (!ok) continue;
        auto [it, fresh] = rule_lines.emplace(*source, r.line);
        if (!fresh) {
          error({r.line, r.source.column},
                "duplicate rule for " + to_string(*source) + " in map " +
                    std::to_string(m->from) + " -> " + std::to_string(m->to) +
                    " (lines " + std::to_string(it->second) + " and " +
                    std::to_string(r.line) + ")");
          continue;
        }
        rule.source = *source;
        rules.push_back(std::move(rule));
      }
      try {
        net.maps.emplace_back(stages_[src], stages_[dst], std::move(rules));
        net.source.maps.push_back(m->where);
      } catch (const Error& e) {
        error(m->where, e.what());
      }
    }
    if (has_errors(diags_)) return;

    for (auto& d : validate(net)) {
      if (d.where.line == 0) d.where = {1, 1};
      diags_.push_back(std::move(d));
    }
    if (!has_errors(diags_)) network_ = std::move(net);
  }

  ParseResult finish() {
    std::stable_sort(diags_.begin(), diags_.end(), [](const auto& a, const auto& b) {
      return std::pair(a.where.line, a.where.column) < std::pair(b.where.line, b.where.column);
    });
    ParseResult result;
    result.diagnostics = std::move(diags_);
    if (!has_errors(result.diagnostics)) result.network = std::move(network_);
    return result;
  }

  RawNetwork raw_;
  Block block_ = Block::kNone;
  bool seen_network_ = false;
  int last_line_ = 0;
  std::vector<StagePtr> stages_;
  std::optional<NetworkDescription> network_;
  std::vector<Diagnostic> diags_;
};

std::string term_text(const Expr& amplitude, const BasisElement& element) {
  std::string amp = to_string(amplitude);
  const bool wrap = amplitude.kind() == ExprKind::kSum ||
                    (amplitude.kind() == ExprKind::kLiteral &&
                     amplitude.value().imag() != 0.0);
  return (wrap ? "(" + amp + ")" : amp) + "*" + to_string(element);
}

}  // namespace

ParseResult parse_network(std::string_view source_text) {
  return NetworkParser().run(source_text);
}

std::string format_network(const NetworkDescription& network) {
  std::ostringstream out;
  out << "network " << network.name << '\n';
  if (!network.parameters.empty()) {
    out << "param ";
    for (std::size_t k = 0; k < network.parameters.size(); ++k) {
      out << (k ? ", " : "") << network.parameters[k];
    }
    out << '\n';
  }
  for (const auto& s : network.stages) {
    out << "\nstage " << s->stage_index() << " suo " << s->suo_dim() << " rank "
        << s->register_rank() << '\n';
    for (const auto& e : s->basis()) out << "  basis " << to_string(e) << '\n';
  }
  if (!network.initial_state.empty()) {
    out << "\ninit\n";
    for (const auto& t : network.initial_state) {
      out << "  term " << term_text(t.amplitude, t.element) << '\n';
    }
  }
  for (const auto& m : network.maps) {
    out << "\nmap " << m.source()->stage_index() << " -> "
        << m.target()->stage_index() << '\n';
    const auto& basis = m.source()->basis();
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const auto& rule = m.rule_at(k);
      if (!rule) continue;
      out << "  rule " << to_string(basis[k]) << " =>";
      for (std::size_t t = 0; t < rule->size(); ++t) {
        out << (t ? " + " : " ") << term_text((*rule)[t].amplitude, (*rule)[t].target);
      }
      out << '\n';
    }
  }
  return out.str();
}

Expr parse_expr(std::string_view text) {
  try {
    LineParser p(tokenize(text));
    if (p.at(Tok::kEnd)) throw SyntaxError{1, "empty expression"};
    Expr e = p.expression();
    p.expect_end();
    return e;
  } catch (const SyntaxError& e) {
    throw ExprSyntaxError(e.column, e.message);
  }
}

}  // namespace qdn
