#pragma once

#include <cctype>
#include <string>

#include "algequiv/ratfunc.hpp"

namespace algequiv {

// Parses a rational-function expression such as
//   "-eta*(2*z - 1)/(z*(z - 1))"   or   "1 - tau*sigma*a^2".
// "z" names the indeterminate; every other identifier is a parameter symbol.
// Supports + - * / ^ and integer literals. Used for golden values, JSON
// matrix entries, and CLI parameter expressions.
class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : s_(text) {}

  RatFunc parse() {
    RatFunc v = expression();
    skip_ws();
    require(pos_ == s_.size(), Errc::syntax, "trailing input in expression '" + s_ + "'");
    return v;
  }

 private:
  RatFunc expression() {
    RatFunc v = term();
    while (true) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        v = v + term();
      } else if (peek() == '-') {
        ++pos_;
        v = v - term();
      } else {
        return v;
      }
    }
  }

  RatFunc term() {
    RatFunc v = unary();
    while (true) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        v = v * unary();
      } else if (peek() == '/') {
        ++pos_;
        RatFunc d = unary();
        require(!d.is_zero(), Errc::syntax, "division by zero in expression");
        v = v / d;
      } else {
        return v;
      }
    }
  }

  RatFunc unary() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  RatFunc power() {
    RatFunc base = primary();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    require(std::isdigit(peek()), Errc::syntax, "expected integer exponent");
    long e = integer();
    RatFunc out(1L);
    for (long i = 0; i < e; ++i) out = out * base;
    return neg ? out.inverse() : out;
  }

  RatFunc primary() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      RatFunc v = expression();
      skip_ws();
      require(peek() == ')', Errc::syntax, "expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(c)) return RatFunc(Rational(integer()));
    if (std::isalpha(c) || c == '_') {
      std::string name = ident();
      if (name == "z") return RatFunc::z();
      return RatFunc::param(name);
    }
    raise(Errc::syntax, "unexpected character in expression '" + s_ + "'");
  }

  long integer() {
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      v = v * 10 + (s_[pos_++] - '0');
    return v;
  }
  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  std::string s_;
  std::size_t pos_ = 0;
};

inline RatFunc parse_ratfunc(const std::string& text) { return ExprParser(text).parse(); }

}  // namespace algequiv
