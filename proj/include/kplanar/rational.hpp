#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "kplanar/error.hpp"

namespace kplanar {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline BigInt pow_int(const BigInt& base, unsigned exp) {
  BigInt out = 1;
  for (unsigned i = 0; i < exp; ++i) out *= base;
  return out;
}

/// Parses "a/b", an integer, or a decimal with optional exponent ("0.25",
/// "1e-3") into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw Error("cannot parse rational '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) fail();
    return num / den;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  BigInt digits = 0;
  int scale = 0;
  bool seen_digit = false, seen_point = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      if (seen_point) --scale;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) fail();
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') fail();
    std::string exponent(text.substr(pos + 1));
    if (exponent.empty()) fail();
    std::size_t used = 0;
    int e = 0;
    try {
      e = std::stoi(exponent, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != exponent.size()) fail();
    scale += e;
  }
  Rational out(digits);
  if (scale > 0) out *= Rational(pow_int(10, static_cast<unsigned>(scale)));
  if (scale < 0) out /= Rational(pow_int(10, static_cast<unsigned>(-scale)));
  return negative ? -out : out;
}

}  // namespace kplanar
