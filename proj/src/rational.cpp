#include "fockmrf/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "fockmrf/errors.hpp"

namespace fockmrf {

std::string to_string(const Rational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

bool parse_uint(std::string_view& s, BigInt& out) {
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == 0) return false;
  out = BigInt(std::string(s.substr(0, i)));
  s.remove_prefix(i);
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  auto skip_ws = [&s] {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  };
  skip_ws();
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  BigInt int_part = 0;
  bool have_digits = parse_uint(s, int_part);
  BigInt num = int_part;
  BigInt den = 1;

  if (!s.empty() && s.front() == '.') {
    s.remove_prefix(1);
    std::size_t frac_len = 0;
    while (frac_len < s.size() && std::isdigit(static_cast<unsigned char>(s[frac_len]))) ++frac_len;
    if (frac_len == 0 && !have_digits)
      throw ParseError("invalid rational literal: '" + std::string(text) + "'");
    for (std::size_t i = 0; i < frac_len; ++i) {
      num = num * 10 + (s[i] - '0');
      den *= 10;
    }
    s.remove_prefix(frac_len);
    have_digits = have_digits || frac_len > 0;
  }
  if (!have_digits) throw ParseError("invalid rational literal: '" + std::string(text) + "'");

  if (!s.empty() && (s.front() == 'e' || s.front() == 'E')) {
    s.remove_prefix(1);
    bool exp_neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
      exp_neg = s.front() == '-';
      s.remove_prefix(1);
    }
    BigInt exp_val;
    if (!parse_uint(s, exp_val) || exp_val > 10000)
      throw ParseError("invalid exponent in rational literal: '" + std::string(text) + "'");
    BigInt scale = pow(BigInt(10), exp_val.convert_to<unsigned>());
    if (exp_neg)
      den *= scale;
    else
      num *= scale;
  }

  if (!s.empty() && s.front() == '/') {
    s.remove_prefix(1);
    skip_ws();
    BigInt divisor;
    if (!parse_uint(s, divisor) || divisor == 0)
      throw ParseError("invalid denominator in rational literal: '" + std::string(text) + "'");
    den *= divisor;
  }

  skip_ws();
  if (!s.empty()) throw ParseError("trailing characters in rational literal: '" + std::string(text) + "'");

  Rational r(num, den);
  return negative ? -r : r;
}

}  // namespace fockmrf
