#pragma once

#include <string>

#include "freeplanar/error.hpp"
#include "freeplanar/rational.hpp"

namespace freeplanar {

// Element x + y*sqrt(d) of a real quadratic field. d = 0 marks a plain
// rational (y ignored, kept 0). d must be a positive non-square when set.
struct Quad {
  Rational x;
  Rational y;
  long long d = 0;

  Quad() = default;
  Quad(Rational rx) : x(std::move(rx)) {}
  Quad(Rational rx, Rational ry, long long rd);

  static Quad sqrt_of(long long d) { return Quad(0, 1, d); }

  bool is_rational() const { return d == 0; }
  bool is_zero() const { return x == 0 && y == 0; }

  Quad operator-() const;
  Quad operator+(const Quad& o) const;
  Quad operator-(const Quad& o) const;
  Quad operator*(const Quad& o) const;
  Quad operator/(const Quad& o) const;
  Quad inverse() const;
  bool operator==(const Quad& o) const;
  bool operator!=(const Quad& o) const { return !(*this == o); }

  // Exact sign of x + y*sqrt(d).
  int sign() const;
  bool operator<(const Quad& o) const { return (*this - o).sign() < 0; }
  bool operator>(const Quad& o) const { return (*this - o).sign() > 0; }
  bool operator<=(const Quad& o) const { return (*this - o).sign() <= 0; }
  bool operator>=(const Quad& o) const { return (*this - o).sign() >= 0; }

  double to_double() const;
  // Canonical text: "p/q" for rationals, otherwise "<y>√<d><±x>", e.g. "10√2-13".
  std::string str() const;
};

long long resolve_sqrt_tag(const std::string& tag);

} // namespace freeplanar
