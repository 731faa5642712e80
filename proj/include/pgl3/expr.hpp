#pragma once

// Tiny exact input language for cyclotomic scalars:
//
//     expr   := ['+'|'-'] term (('+'|'-') term)*
//     term   := factor ('*' factor)*
//     factor := rational | 'z' ['^' int] | 'i' | '(' expr ')' ['^' int]
//
// z is zeta_N for the given conductor N; i needs 4 | N.
// Examples: "z^3", "1/2*z^3-2", "-z^-1 + 3/4", "(1+i)*z".

#include <cctype>
#include <string>
#include <string_view>

#include "pgl3/cyclotomic.hpp"
#include "pgl3/error.hpp"
#include "pgl3/serialize.hpp"

namespace pgl3 {

namespace detail {

class ExprParser {
public:
  ExprParser(std::string_view src, long n) : s_(src), n_(n) {}

  Cyclo parse() {
    Cyclo v = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::ParseError, what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Cyclo expr() {
    Cyclo acc = Cyclo::zero(n_);
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    Cyclo t = term();
    acc = neg ? acc - t : acc + t;
    for (;;) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  Cyclo term() {
    Cyclo acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  long integer() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected an integer");
    if (pos_ - start > 9) error("integer too large");
    const long v = std::stol(std::string(s_.substr(start, pos_ - start)));
    return neg ? -v : v;
  }

  long exponent() { return accept('^') ? integer() : 1; }

  Cyclo factor() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Cyclo v = expr();
      if (!accept(')')) error("expected ')'");
      return v.pow(exponent());
    }
    if (c == 'z') {
      ++pos_;
      return Cyclo::zeta(n_, exponent());
    }
    if (c == 'i') {
      ++pos_;
      if (n_ % 4 != 0) fail(ErrorKind::InvalidInput, "'i' needs a conductor divisible by 4");
      return Cyclo::zeta(n_, n_ / 4).pow(exponent());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        const std::size_t d = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (d == pos_) error("expected a denominator");
      }
      return Cyclo::rational(n_, parse_rational(std::string(s_.substr(start, pos_ - start))));
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  long n_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parse an expression in z = zeta_N.
inline Cyclo parse_cyclo_expr(std::string_view src, long conductor) {
  if (conductor < 1) fail(ErrorKind::InvalidInput, "conductor must be >= 1");
  return detail::ExprParser(src, conductor).parse();
}

} // namespace pgl3
