#ifndef POLYDEG_PARSE_HPP
#define POLYDEG_PARSE_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "poly.hpp"

namespace polydeg {

namespace detail {

// Recursive-descent parser for
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer ('/' integer)? | 'x' index | '(' expr ')'
class PolyParser {
public:
  PolyParser(std::string_view text, const Ring& ring, std::size_t nvars)
    : s_(text), ring_(ring), n_(nvars) {}

  Polynomial parse()
  {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

private:
  void skip_ws()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool accept(char c)
  {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits()
  {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_)
      throw ParseError(pos_, "expected a number");
    return std::string(s_.substr(start, pos_ - start));
  }

  Polynomial expr()
  {
    Polynomial acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term()
  {
    Polynomial acc = unary();
    while (accept('*'))
      acc = acc * unary();
    return acc;
  }

  Polynomial unary()
  {
    if (accept('-'))
      return -unary();
    if (accept('+'))
      return unary();
    return power();
  }

  Polynomial power()
  {
    Polynomial base = primary();
    if (accept('^')) {
      std::size_t at = pos_;
      std::string k = digits();
      if (k.size() > 6)
        throw ParseError(at, "exponent too large");
      return base.pow(static_cast<std::uint32_t>(std::stoul(k)));
    }
    return base;
  }

  Polynomial primary()
  {
    skip_ws();
    if (pos_ >= s_.size())
      throw ParseError(pos_, "unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')'))
        throw ParseError(pos_, "expected ')'");
      return p;
    }
    if (c == 'x') {
      std::size_t at = pos_;
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError(pos_, "expected variable index");
      std::string k = digits();
      unsigned long idx = k.size() > 6 ? 0 : std::stoul(k);
      if (idx == 0 || idx > n_)
        throw ParseError(at, "variable x" + k + " out of range 1.." + std::to_string(n_));
      return Polynomial::variable(ring_, n_, idx - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t at = pos_;
      std::string num = digits();
      if (accept('/')) {
        std::string den = digits();
        if (den.find_first_not_of('0') == std::string::npos)
          throw ParseError(at, "zero denominator");
        num += "/" + den;
      }
      try {
        return Polynomial::constant(ring_, n_, ring_.parse_scalar(num));
      } catch (const Error& e) {
        throw ParseError(at, e.what());
      }
    }
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  const Ring& ring_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

} // namespace detail

// Largest variable index mentioned in `text` (x7 -> 7), 0 if none.
inline std::size_t max_variable_index(std::string_view text)
{
  std::size_t best = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'x')
      continue;
    std::size_t j = i + 1, v = 0;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) && v < 1000000)
      v = v * 10 + static_cast<std::size_t>(text[j++] - '0');
    best = std::max(best, v);
  }
  return best;
}

// nvars == 0 infers the variable count from the largest index used (min 1).
inline Polynomial parse_polynomial(std::string_view text, const Ring& ring = Ring::rationals(),
                                   std::size_t nvars = 0)
{
  if (nvars == 0)
    nvars = std::max<std::size_t>(1, max_variable_index(text));
  return detail::PolyParser(text, ring, nvars).parse();
}

inline std::string to_string(const Polynomial& p)
{
  if (p.is_zero())
    return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    bool negative = c < 0;
    mpq_class mag = negative ? mpq_class(-c) : c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0)
        continue;
      if (!mono.empty())
        mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1)
        mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      out += mag.get_str();
    else if (mag == 1)
      out += mono;
    else
      out += mag.get_str() + "*" + mono;
  }
  return out;
}

} // namespace polydeg

#endif
