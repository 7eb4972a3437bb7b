#pragma once

#include <vector>

#include "freeplanar/rational.hpp"

namespace freeplanar {

// Truncated power series with exact rational coefficients c[0..order].
// Every operation states its truncation order; nothing truncates silently.
struct Series {
  std::vector<Rational> c;

  Series() : c(1, Rational(0)) {}
  explicit Series(int order) : c(order + 1, Rational(0)) {}

  int order() const { return static_cast<int>(c.size()) - 1; }
  const Rational& at(int k) const { return c[k]; }
  Rational& at(int k) { return c[k]; }

  static Series constant(const Rational& v, int order);
  static Series z(int order);

  bool operator==(const Series& o) const { return c == o.c; }
};

Series series_truncate(const Series& a, int order);
Series series_add(const Series& a, const Series& b);
Series series_sub(const Series& a, const Series& b);
Series series_mul(const Series& a, const Series& b);
// b must have a nonzero constant term.
Series series_div(const Series& a, const Series& b);
// g must vanish at 0.
Series series_compose(const Series& f, const Series& g);
// f must vanish at 0 with nonzero linear term; returns the compositional
// inverse to the same order.
Series series_reversion(const Series& f);
// sqrt(1 + u) for u vanishing at 0, branch with value 1 at 0.
Series series_sqrt1p(const Series& u);

std::string series_str(const Series& s);

} // namespace freeplanar
