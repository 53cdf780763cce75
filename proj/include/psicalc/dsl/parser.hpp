#pragma once

#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "psicalc/dsl/ast.hpp"
#include "psicalc/error.hpp"
#include "psicalc/scalar/rational.hpp"

namespace psicalc::dsl {

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::size_t line, std::size_t column, std::set<std::string> expected,
             const std::string& found)
      : Error(describe(offset, line, column, expected, found)),
        offset_(offset),
        line_(line),
        column_(column),
        expected_(std::move(expected)),
        found_(found) {}

  [[nodiscard]] std::size_t offset() const { return offset_; }
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }
  [[nodiscard]] const std::set<std::string>& expected() const { return expected_; }
  [[nodiscard]] const std::string& found() const { return found_; }

 private:
  static std::string describe(std::size_t offset, std::size_t line, std::size_t column,
                              const std::set<std::string>& expected, const std::string& found) {
    std::string out = "syntax error at offset " + std::to_string(offset) + " (line " + std::to_string(line) +
                      ", column " + std::to_string(column) + "): found " + found + ", expected ";
    bool first = true;
    for (const auto& e : expected) {
      out += (first ? "" : " | ") + e;
      first = false;
    }
    return out;
  }

  std::size_t offset_, line_, column_;
  std::set<std::string> expected_;
  std::string found_;
};

namespace detail {

enum class Tok { number, ident, string, punct, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

inline std::string token_label(const Token& t) {
  switch (t.kind) {
    case Tok::end: return "end of input";
    case Tok::number: return "number " + t.text;
    case Tok::ident: return "identifier " + t.text;
    case Tok::string: return "string \"" + t.text + "\"";
    case Tok::punct: return "'" + t.text + "'";
  }
  return t.text;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) { lex(); }

  NodePtr parse_all() {
    NodePtr e = expr();
    if (peek().kind != Tok::end) {
      expect_label("end of input");
      fail();
    }
    return e;
  }

 private:
  static bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  void lex() {
    std::size_t i = 0;
    while (i < src_.size()) {
      const char c = src_[i];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++i;
        continue;
      }
      const std::size_t start = i;
      if (is_digit(c)) {
        while (i < src_.size() && is_digit(src_[i])) ++i;
        tokens_.push_back({Tok::number, std::string(src_.substr(start, i - start)), start});
      } else if (is_ident_start(c)) {
        while (i < src_.size() && (is_ident_start(src_[i]) || is_digit(src_[i]))) ++i;
        tokens_.push_back({Tok::ident, std::string(src_.substr(start, i - start)), start});
      } else if (c == '"') {
        ++i;
        while (i < src_.size() && src_[i] != '"') ++i;
        if (i >= src_.size()) {
          pos_error(src_.size(), {"'\"'"}, "end of input");
        }
        tokens_.push_back({Tok::string, std::string(src_.substr(start + 1, i - start - 1)), start});
        ++i;
      } else if (std::string_view("+-*^[](),@=/").find(c) != std::string_view::npos) {
        tokens_.push_back({Tok::punct, std::string(1, c), start});
        ++i;
      } else {
        pos_error(start, {"expression"}, std::string("character '") + c + "'");
      }
    }
    tokens_.push_back({Tok::end, "", src_.size()});
  }

  [[noreturn]] void pos_error(std::size_t offset, std::set<std::string> expected, const std::string& found) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(offset, line, col, std::move(expected), found);
  }

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }

  // Alternatives tried at the current token are collected so a failure can
  // list everything that would have been accepted there.
  void expect_label(const std::string& label) {
    if (pos_ != expected_pos_) {
      expected_pos_ = pos_;
      expected_.clear();
    }
    expected_.insert(label);
  }

  bool accept_punct(const char* p) {
    if (peek().kind == Tok::punct && peek().text == p) {
      ++pos_;
      return true;
    }
    expect_label(std::string("'") + p + "'");
    return false;
  }

  void require_punct(const char* p) {
    if (!accept_punct(p)) fail();
  }

  [[noreturn]] void fail() const {
    const Token& t = peek();
    std::set<std::string> expected = expected_pos_ == pos_ ? expected_ : std::set<std::string>{};
    pos_error(t.offset, std::move(expected), token_label(t));
  }

  std::int64_t integer() {
    const bool negative = accept_punct("-");
    if (peek().kind != Tok::number) {
      expect_label("integer");
      fail();
    }
    const Token& t = peek();
    if (t.text.size() > 18) pos_error(t.offset, {"integer of at most 18 digits"}, token_label(t));
    std::int64_t v = std::stoll(t.text);
    ++pos_;
    return negative ? -v : v;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      const std::size_t at = peek().offset;
      if (accept_punct("+"))
        lhs = make::binary(NodeKind::add, lhs, term(), at);
      else if (accept_punct("-"))
        lhs = make::binary(NodeKind::sub, lhs, term(), at);
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (true) {
      const std::size_t at = peek().offset;
      if (!accept_punct("*")) return lhs;
      lhs = make::binary(NodeKind::mul, lhs, factor(), at);
    }
  }

  NodePtr factor() {
    const std::size_t at = peek().offset;
    if (accept_punct("-")) return make::neg(factor(), at);
    NodePtr base = atom();
    const std::size_t caret = peek().offset;
    if (!accept_punct("^")) return base;
    std::int64_t e = 0;
    if (accept_punct("(")) {
      e = integer();
      require_punct(")");
    } else {
      e = integer();
    }
    return make::pow(base, e, caret);
  }

  NodePtr atom() {
    const Token& t = peek();
    const std::size_t at = t.offset;
    if (t.kind == Tok::number) {
      std::string text = t.text;
      ++pos_;
      if (accept_punct("/")) {
        if (peek().kind != Tok::number) {
          expect_label("integer");
          fail();
        }
        text += "/" + peek().text;
        ++pos_;
      }
      Rational value;
      try {
        value = Rational::parse(text);
      } catch (const DivisionByZero&) {
        pos_error(at, {"nonzero denominator"}, "'" + text + "'");
      }
      return make::scalar(value.to_string(), at);
    }
    if (t.kind == Tok::ident) {
      const std::string name = t.text;
      if (name == "e" && peek(1).kind == Tok::punct && peek(1).text == "[") return basis();
      if (name == "xi" || name == "xi1" || name == "xi2") {
        ++pos_;
        return make::xi(name, at);
      }
      if ((name == "res" || name == "res_sigma" || name == "Res") && peek(1).kind == Tok::punct &&
          peek(1).text == "(")
        return call();
      ++pos_;
      return make::ident(name, at);
    }
    if (accept_punct("[")) {
      NodePtr a = expr();
      require_punct(",");
      NodePtr b = expr();
      require_punct("]");
      return make::binary(NodeKind::commutator, a, b, at);
    }
    if (accept_punct("(")) {
      NodePtr e = expr();
      require_punct(")");
      return e;
    }
    expect_label("number");
    expect_label("identifier");
    expect_label("'e['");
    expect_label("'xi'");
    fail();
  }

  NodePtr basis() {
    const std::size_t at = peek().offset;
    pos_ += 2;  // 'e' '['
    std::vector<std::int64_t> freq{integer()};
    if (accept_punct(",")) freq.push_back(integer());
    require_punct("]");
    std::vector<std::int64_t> comp;
    if (accept_punct("@")) {
      require_punct("(");
      comp.push_back(integer());
      if (accept_punct(",")) comp.push_back(integer());
      require_punct(")");
    }
    return make::basis(std::move(freq), std::move(comp), at);
  }

  NodePtr call() {
    const std::size_t at = peek().offset;
    const std::string name = peek().text;
    pos_ += 2;  // name '('
    NodePtr arg = expr();
    std::string option;
    if (accept_punct(",")) {
      if (!(peek().kind == Tok::ident && peek().text == "t")) {
        expect_label("'t'");
        fail();
      }
      ++pos_;
      require_punct("=");
      if (peek().kind == Tok::string) {
        option = peek().text;
        ++pos_;
      } else if (peek().kind == Tok::number || peek().kind == Tok::ident) {
        option = peek().text;
        ++pos_;
      } else {
        expect_label("trace selector");
        fail();
      }
    }
    require_punct(")");
    return make::call(name, arg, option, at);
  }

  std::string_view src_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t expected_pos_ = static_cast<std::size_t>(-1);
  std::set<std::string> expected_;
};

}  // namespace detail

/// Parses one expression of the symbol language.
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := '-' factor | atom ('^' int | '^' '(' int ')')?
///   atom   := scalar | ident | basis | 'xi' | 'xi1' | 'xi2' | '[' expr ',' expr ']' | '(' expr ')'
///           | ('res' | 'res_sigma' | 'Res') '(' expr (',' 't' '=' selector)? ')'
///   basis  := 'e[' int (',' int)? ']' ('@(' int (',' int)? ')')?
inline NodePtr parse(std::string_view text) { return detail::Parser(text).parse_all(); }

}  // namespace psicalc::dsl
