#include "speq/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

#include "speq/error.hpp"

namespace speq {

Rational make_ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) raise(Errc::invalid_config, "zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

double to_double(const Rational& r) { return r.template convert_to<double>(); }

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Rational parse_decimal(const std::string& s) {
  // [sign] digits [. digits] [eE [sign] digits]
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    negative = (s[pos] == '-');
    ++pos;
  }
  BigInt mantissa = 0;
  long frac_digits = 0;
  bool any_digit = false;
  for (; pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])); ++pos) {
    mantissa = mantissa * 10 + (s[pos] - '0');
    any_digit = true;
  }
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    for (; pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])); ++pos) {
      mantissa = mantissa * 10 + (s[pos] - '0');
      ++frac_digits;
      any_digit = true;
    }
  }
  long exponent = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    bool exp_neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      exp_neg = (s[pos] == '-');
      ++pos;
    }
    bool exp_digit = false;
    for (; pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])); ++pos) {
      exponent = exponent * 10 + (s[pos] - '0');
      exp_digit = true;
      if (exponent > 100000) raise(Errc::invalid_config, "exponent too large: " + s);
    }
    if (!exp_digit) raise(Errc::invalid_config, "bad number: " + s);
    if (exp_neg) exponent = -exponent;
  }
  if (!any_digit || pos != s.size()) raise(Errc::invalid_config, "bad number: " + s);

  long net = exponent - frac_digits;
  BigInt num = mantissa;
  BigInt den = 1;
  if (net >= 0) {
    for (long i = 0; i < net; ++i) num *= 10;
  } else {
    for (long i = 0; i < -net; ++i) den *= 10;
  }
  if (negative) num = -num;
  return Rational(num, den);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) raise(Errc::invalid_config, "empty number");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den))
      raise(Errc::invalid_config, "bad ratio: " + text);
    BigInt n(num), d(den);
    if (d == 0) raise(Errc::invalid_config, "zero denominator: " + text);
    return Rational(n, d);
  }
  if (is_integer_token(s)) return Rational(BigInt(s));
  return parse_decimal(s);
}

std::string format_rational(const Rational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

BigInt ceil_rational(const Rational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);  // > 0 after normalization
  BigInt q = num / den;
  if (num > q * den) ++q;
  return q;
}

}  // namespace speq
