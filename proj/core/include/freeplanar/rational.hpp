#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace freeplanar {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Canonical form "p" or "p/q", q > 0.
inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline int sign(const Rational& r) {
  if (r > 0) return 1;
  if (r < 0) return -1;
  return 0;
}

Rational parse_rational(const std::string& s);

} // namespace freeplanar
