#pragma once

// Text grammar for operator expressions (see docs/expression-grammar.md):
//
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { ("*" | "/") unary } ;
//   unary   = "-" unary | primary ;
//   primary = "a+" | "a" | "J" | "i" | "sqrt2" | integer | "(" expr ")" ;
//
// "a+" is a single token when the '+' directly follows 'a'. Division requires a nonzero
// scalar divisor.

#include "ccr/algebra.hpp"
#include "ccr/exact_scalar.hpp"

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ccr {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : std::runtime_error("parse error at column " + std::to_string(column) + ": " + what),
        column_(column) {}
  /// 1-based column of the offending token.
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

namespace detail {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) { advance(); }

  OperatorExpr parse() {
    OperatorExpr e = expr();
    if (tok_.kind != Tok::End) fail("unexpected '" + std::string(tok_.text) + "'");
    return e;
  }

 private:
  enum class Tok { End, Number, A, ADag, J, I, Sqrt2, Plus, Minus, Star, Slash, LParen, RParen };
  struct Token {
    Tok kind = Tok::End;
    std::string_view text;
    std::size_t column = 0;
  };

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, tok_.column); }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_.column = pos_ + 1;
    if (pos_ >= text_.size()) {
      tok_ = {Tok::End, {}, pos_ + 1};
      return;
    }
    std::size_t start = pos_;
    char ch = text_[pos_];
    auto single = [&](Tok kind) {
      ++pos_;
      tok_ = {kind, text_.substr(start, 1), start + 1};
    };
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      tok_ = {Tok::Number, text_.substr(start, pos_ - start), start + 1};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string_view word = text_.substr(start, pos_ - start);
      if (word == "a") {
        if (pos_ < text_.size() && text_[pos_] == '+') {
          ++pos_;
          tok_ = {Tok::ADag, text_.substr(start, 2), start + 1};
        } else {
          tok_ = {Tok::A, word, start + 1};
        }
      } else if (word == "J") {
        tok_ = {Tok::J, word, start + 1};
      } else if (word == "i") {
        tok_ = {Tok::I, word, start + 1};
      } else if (word == "sqrt2") {
        tok_ = {Tok::Sqrt2, word, start + 1};
      } else {
        tok_ = {Tok::End, word, start + 1};
        fail("unknown symbol '" + std::string(word) + "'");
      }
      return;
    }
    switch (ch) {
      case '+': return single(Tok::Plus);
      case '-': return single(Tok::Minus);
      case '*': return single(Tok::Star);
      case '/': return single(Tok::Slash);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      default:
        tok_ = {Tok::End, text_.substr(start, 1), start + 1};
        fail("unexpected character '" + std::string(1, ch) + "'");
    }
  }

  OperatorExpr expr() {
    OperatorExpr e = term();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      bool plus = tok_.kind == Tok::Plus;
      advance();
      OperatorExpr rhs = term();
      if (plus) {
        e += rhs;
      } else {
        e -= rhs;
      }
    }
    return e;
  }

  OperatorExpr term() {
    OperatorExpr e = unary();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      bool divide = tok_.kind == Tok::Slash;
      std::size_t column = tok_.column;
      advance();
      OperatorExpr rhs = unary();
      if (divide) {
        if (!rhs.is_scalar()) throw ParseError("divisor must be a scalar", column);
        ExactScalar d = rhs.scalar_part();
        if (d.is_zero()) throw ParseError("division by zero", column);
        e = d.inverse() * e;
      } else {
        e = e * rhs;
      }
    }
    return e;
  }

  OperatorExpr unary() {
    if (tok_.kind == Tok::Minus) {
      advance();
      return -unary();
    }
    return primary();
  }

  OperatorExpr primary() {
    switch (tok_.kind) {
      case Tok::A: advance(); return OperatorExpr(Generator::A);
      case Tok::ADag: advance(); return OperatorExpr(Generator::ADag);
      case Tok::J: advance(); return OperatorExpr(Generator::J);
      case Tok::I: advance(); return OperatorExpr(ExactScalar::i());
      case Tok::Sqrt2: advance(); return OperatorExpr(ExactScalar::sqrt2());
      case Tok::Number: {
        Integer value(std::string(tok_.text));
        advance();
        return OperatorExpr(ExactScalar(Rational(value)));
      }
      case Tok::LParen: {
        advance();
        OperatorExpr e = expr();
        if (tok_.kind != Tok::RParen) fail("expected ')'");
        advance();
        return e;
      }
      case Tok::End:
        if (tok_.text.empty()) fail("unexpected end of expression");
        [[fallthrough]];
      default: fail("unexpected '" + std::string(tok_.text) + "'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token tok_;
};

}  // namespace detail

inline OperatorExpr parse_expression(std::string_view text) {
  return detail::ExpressionParser(text).parse();
}

}  // namespace ccr
