#include "outerspace/scalar.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "outerspace/errors.hpp"

namespace outerspace {

namespace {

Rational parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  boost::multiprecision::mpz_int digits = 0;
  long exponent = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      digits = digits * 10 + (c - '0');
      any_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw ParseError("expected a number", i);
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    const std::string rest(text.substr(i));
    char* end = nullptr;
    const long e = std::strtol(rest.c_str(), &end, 10);
    if (end == rest.c_str()) throw ParseError("malformed exponent", i);
    exponent += e;
    i += static_cast<std::size_t>(end - rest.c_str());
  }
  if (i != text.size()) throw ParseError("trailing characters in number", i);
  Rational value(digits);
  boost::multiprecision::mpz_int scale = 1;
  for (long k = 0; k < std::labs(exponent); ++k) scale *= 10;
  value = exponent >= 0 ? value * Rational(scale) : value / Rational(scale);
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())) != 0) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())) != 0) text.remove_suffix(1);
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(text.substr(0, slash));
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator", slash + 1);
  return num / den;
}

std::string format_rational(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double round_report(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

}  // namespace outerspace
