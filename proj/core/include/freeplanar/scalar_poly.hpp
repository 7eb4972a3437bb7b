#pragma once

#include <map>
#include <string>

#include "freeplanar/rational.hpp"

namespace freeplanar {

// Laurent polynomial over Q in loop parameters indexed by color character,
// e.g. 3*d_a^2*d_b^-1. Used wherever loop counts stay symbolic.
class ScalarPoly {
public:
  using Mono = std::map<char, int>;

  ScalarPoly() = default;
  static ScalarPoly constant(const Rational& c);
  static ScalarPoly one() { return constant(1); }
  static ScalarPoly delta(char color, int exponent = 1);

  bool is_zero() const { return terms_.empty(); }
  bool operator==(const ScalarPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const ScalarPoly& o) const { return !(*this == o); }

  ScalarPoly operator+(const ScalarPoly& o) const;
  ScalarPoly operator-(const ScalarPoly& o) const;
  ScalarPoly operator*(const ScalarPoly& o) const;
  ScalarPoly operator-() const;
  ScalarPoly scaled(const Rational& c) const;
  ScalarPoly shifted(char color, int exponent) const; // multiply by d_color^exponent

  Rational eval(const std::map<char, Rational>& delta) const;
  double eval(const std::map<char, double>& delta) const;

  // Constant term if the polynomial is constant, error otherwise.
  Rational as_constant() const;

  std::string str() const;

  const std::map<Mono, Rational>& terms() const { return terms_; }

private:
  void add_term(const Mono& m, const Rational& c);
  std::map<Mono, Rational> terms_;
};

} // namespace freeplanar
