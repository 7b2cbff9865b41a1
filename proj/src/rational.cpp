#include "wft/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace wft {

std::string rat_to_string(const Rat& q) {
  std::string s = q.get_num().get_str();
  if (q.get_den() != 1) {
    s += "/";
    s += q.get_den().get_str();
  }
  return s;
}

namespace {

// Parses a decimal literal with optional exponent into an exact rational.
Rat decimal_to_rat(const std::string& s) {
  std::string digits;
  long ten_exp = 0;
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
  bool any = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("bad rational: " + s);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (seen_dot) --ten_exp;
      any = true;
    } else if (c == 'e' || c == 'E') {
      ten_exp += std::strtol(s.c_str() + i + 1, nullptr, 10);
      break;
    } else {
      throw std::invalid_argument("bad rational: " + s);
    }
  }
  if (!any) throw std::invalid_argument("bad rational: " + s);
  mpz_class num(digits.empty() ? "0" : digits, 10);
  Rat r(num);
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(ten_exp < 0 ? -ten_exp : ten_exp));
  if (ten_exp < 0)
    r /= Rat(p10);
  else
    r *= Rat(p10);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

}  // namespace

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.find('/') != std::string::npos) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
  }
  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos)
    return decimal_to_rat(s);
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

std::optional<Rat> rat_sqrt_exact(const Rat& q) {
  if (q < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rat r(rn, rd);
  r.canonicalize();
  return r;
}

}  // namespace wft
