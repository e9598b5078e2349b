#pragma once

// Text form of Dirichlet polynomials: terms c * n^-s with complex literals
// (3, 2.5, 2i, 1+2i via sums), parenthesized subexpressions, + - *, and a
// canonical printer whose output parses back to the identical polynomial.

#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "dirichlet/arith.hpp"

namespace dirichlet {

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
};

namespace detail {

class SeriesParser {
 public:
  explicit SeriesParser(const std::string& s) : s_(s) {}

  DirichletPoly run() {
    DirichletPoly d = sum();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
    return d;
  }

 private:
  DirichletPoly sum() {
    DirichletPoly d = product();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        d += product();
      } else if (peek() == '-') {
        ++pos_;
        d -= product();
      } else {
        return d;
      }
    }
  }

  DirichletPoly product() {
    DirichletPoly d = unary();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        d = dirichlet_product(d, unary());
      } else {
        return d;
      }
    }
  }

  DirichletPoly unary() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return primary();
  }

  DirichletPoly primary() {
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      DirichletPoly d = sum();
      skip_ws();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return d;
    }
    return atom();
  }

  // number, number 'i', bare 'i', or integer '^-s'.
  DirichletPoly atom() {
    skip_ws();
    const std::size_t start = pos_;
    if (peek() == 'i' && !std::isdigit(static_cast<unsigned char>(peek_at(pos_ + 1)))) {
      ++pos_;
      return DirichletPoly::constant(cplx{0.0, 1.0});
    }
    if (!std::isdigit(static_cast<unsigned char>(peek())) && peek() != '.')
      throw ParseError("expected a number, 'i', or '('", pos_);
    std::size_t end = pos_;
    bool saw_dot = false, saw_exp = false;
    while (end < s_.size()) {
      char c = s_[end];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        ++end;
      } else if (c == '.' && !saw_dot && !saw_exp) {
        saw_dot = true;
        ++end;
      } else if ((c == 'e' || c == 'E') && !saw_exp && end + 1 < s_.size() &&
                 (std::isdigit(static_cast<unsigned char>(s_[end + 1])) ||
                  ((s_[end + 1] == '+' || s_[end + 1] == '-') && end + 2 < s_.size() &&
                   std::isdigit(static_cast<unsigned char>(s_[end + 2]))))) {
        saw_exp = true;
        end += (s_[end + 1] == '+' || s_[end + 1] == '-') ? 2 : 1;
      } else {
        break;
      }
    }
    const std::string tok = s_.substr(pos_, end - pos_);
    pos_ = end;
    skip_ws();
    if (peek() == '^') {
      if (saw_dot || saw_exp)
        throw ParseError("the base of ^-s must be a positive integer", start);
      ++pos_;
      skip_ws();
      if (peek() != '-') throw ParseError("expected '-s' after '^'", pos_);
      ++pos_;
      skip_ws();
      if (peek() != 's') throw ParseError("expected 's' after '^-'", pos_);
      ++pos_;
      errno = 0;
      char* endp = nullptr;
      unsigned long long n = std::strtoull(tok.c_str(), &endp, 10);
      if (errno == ERANGE || (endp && *endp != '\0'))
        throw ParseError("index does not fit 64 bits", start);
      if (n == 0) throw ParseError("index must be positive", start);
      return DirichletPoly::monomial(static_cast<std::uint64_t>(n));
    }
    char* endp = nullptr;
    double v = std::strtod(tok.c_str(), &endp);
    if (endp == tok.c_str()) throw ParseError("malformed number", start);
    if (peek() == 'i') {
      ++pos_;
      return DirichletPoly::constant(cplx{0.0, v});
    }
    return DirichletPoly::constant(cplx{v, 0.0});
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char peek_at(std::size_t i) const { return i < s_.size() ? s_[i] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n')) ++pos_;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

inline std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

inline DirichletPoly parse_series(const std::string& text) {
  return detail::SeriesParser(text).run();
}

// Canonical text: terms ascending in n, coefficients in the shortest of the
// forms a, bi, (a+bi), printed with enough digits to round trip exactly.
inline std::string print_series(const DirichletPoly& d) {
  if (d.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [n, c] : d.terms()) {
    const double re = c.real(), im = c.imag();
    std::string piece;
    bool negative = false;
    if (im == 0.0) {
      double v = re;
      negative = v < 0.0;
      if (negative) v = -v;
      if (n == 1)
        piece = detail::fmt17(v);
      else if (v == 1.0)
        piece = std::to_string(n) + "^-s";
      else
        piece = detail::fmt17(v) + "*" + std::to_string(n) + "^-s";
    } else if (re == 0.0) {
      double v = im;
      negative = v < 0.0;
      if (negative) v = -v;
      piece = detail::fmt17(v) + "i";
      if (n != 1) piece += "*" + std::to_string(n) + "^-s";
    } else {
      piece = "(" + detail::fmt17(re) + (im < 0.0 ? " - " : " + ") + detail::fmt17(std::abs(im)) +
              "i)";
      if (n != 1) piece += "*" + std::to_string(n) + "^-s";
    }
    if (first) {
      out = negative ? "-" + piece : piece;
      first = false;
    } else {
      out += negative ? " - " + piece : " + " + piece;
    }
  }
  return out;
}

}  // namespace dirichlet
