#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mgl {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "7", "-2/3", "0.125" or "1.5e-2" into an exact rational.
/// Decimal literals are converted digit by digit, so "0.1" is exactly 1/10.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) {
  return value.convert_to<double>();
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

}  // namespace mgl
