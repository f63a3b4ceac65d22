#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdio>
#include <stdexcept>
#include <string>

namespace curv {

using BigInt = boost::multiprecision::cpp_int;

// Exact fraction with arbitrary-precision numerator/denominator. Every
// curvature value in this library is one of these; nothing is ever rounded.
// boost keeps the value canonical (lowest terms, denominator > 0).
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rational_num(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

inline BigInt rational_den(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

// "p/q", or just "p" when the value is an integer.
inline std::string to_fraction_string(const Rational& r) {
  std::string s = rational_num(r).str();
  if (rational_den(r) != 1) {
    s += "/" + rational_den(r).str();
  }
  return s;
}

// Accepts "p/q" or "p".
inline Rational parse_fraction(const std::string& text) {
  try {
    Rational r(text);
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
}

// Decimal approximation with 12 significant digits. Display only; never
// feeds back into any computation.
inline std::string approx_string(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", r.convert_to<double>());
  return std::string(buf);
}

}  // namespace curv
