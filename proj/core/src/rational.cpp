#include "mgl/rational.hpp"

#include <cctype>

#include "mgl/error.hpp"

namespace mgl {
namespace {

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorCode::kParseError, "not a number: '" + std::string(text) + "'");
}

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) bad_number(whole);
  BigInt value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) bad_number(whole);
    value = value * 10 + (c - '0');
  }
  return value;
}

BigInt pow10(std::int64_t exponent) {
  BigInt p = 1;
  for (std::int64_t i = 0; i < exponent; ++i) p *= 10;
  return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) bad_number(text);
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(s.substr(0, slash), text);
    BigInt den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) bad_number(text);
    result = Rational(num, den);
  } else {
    std::int64_t exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (exp_text.empty() || exp_text.size() > 6) bad_number(text);
      exponent = parse_integer(exp_text, text).convert_to<std::int64_t>();
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
      exponent -= static_cast<std::int64_t>(s.size() - dot - 1);
      if (digits.empty()) bad_number(text);
    } else {
      digits = std::string(s);
    }
    BigInt mantissa = parse_integer(digits, text);
    result = exponent >= 0 ? Rational(mantissa * pow10(exponent))
                           : Rational(mantissa, pow10(-exponent));
  }
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value) {
  return value.str();
}

}  // namespace mgl
