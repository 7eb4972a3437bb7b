#include "freeplanar/series.hpp"

#include <algorithm>

#include "freeplanar/error.hpp"

namespace freeplanar {

Series Series::constant(const Rational& v, int order) {
  Series s(order);
  s.c[0] = v;
  return s;
}

Series Series::z(int order) {
  Series s(order);
  if (order >= 1) s.c[1] = 1;
  return s;
}

Series series_truncate(const Series& a, int order) {
  if (order < 0) fail(ErrorKind::SchemaError, "series order must be nonnegative");
  Series r(order);
  for (int k = 0; k <= order && k <= a.order(); ++k) r.c[k] = a.c[k];
  return r;
}

static int join_order(const Series& a, const Series& b) {
  return std::min(a.order(), b.order());
}

Series series_add(const Series& a, const Series& b) {
  Series r(join_order(a, b));
  for (int k = 0; k <= r.order(); ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}

Series series_sub(const Series& a, const Series& b) {
  Series r(join_order(a, b));
  for (int k = 0; k <= r.order(); ++k) r.c[k] = a.c[k] - b.c[k];
  return r;
}

Series series_mul(const Series& a, const Series& b) {
  Series r(join_order(a, b));
  for (int n = 0; n <= r.order(); ++n)
    for (int k = 0; k <= n; ++k) r.c[n] += a.c[k] * b.c[n - k];
  return r;
}

Series series_div(const Series& a, const Series& b) {
  if (b.c[0] == 0) fail(ErrorKind::NonInvertible, "series division by a series vanishing at 0");
  Series r(join_order(a, b));
  for (int n = 0; n <= r.order(); ++n) {
    Rational acc = a.c[n];
    for (int k = 0; k < n; ++k) acc -= r.c[k] * b.c[n - k];
    r.c[n] = acc / b.c[0];
  }
  return r;
}

Series series_compose(const Series& f, const Series& g) {
  if (g.c[0] != 0) fail(ErrorKind::SchemaError, "series composition requires the inner series to vanish at 0");
  int order = join_order(f, g);
  Series r = Series::constant(f.c[std::min(f.order(), order)], order);
  Series gt = series_truncate(g, order);
  for (int k = std::min(f.order(), order) - 1; k >= 0; --k) {
    r = series_mul(r, gt);
    r.c[0] += f.c[k];
  }
  return r;
}

Series series_reversion(const Series& f) {
  if (f.c[0] != 0) fail(ErrorKind::SchemaError, "series reversion requires a series vanishing at 0");
  if (f.c[1] == 0) fail(ErrorKind::NonInvertible, "series has no compositional inverse");
  int order = f.order();
  Series g(order);
  if (order >= 1) g.c[1] = Rational(1) / f.c[1];
  for (int n = 2; n <= order; ++n) {
    Series h = series_compose(series_truncate(f, n), series_truncate(g, n));
    g.c[n] = -h.c[n] / f.c[1];
  }
  return g;
}

Series series_sqrt1p(const Series& u) {
  if (u.c[0] != 0) fail(ErrorKind::SchemaError, "sqrt expansion requires a series vanishing at 0");
  Series s(u.order());
  s.c[0] = 1;
  for (int n = 1; n <= s.order(); ++n) {
    Rational acc = u.c[n];
    for (int k = 1; k < n; ++k) acc -= s.c[k] * s.c[n - k];
    s.c[n] = acc / 2;
  }
  return s;
}

std::string series_str(const Series& s) {
  std::string out;
  for (int k = 0; k <= s.order(); ++k) {
    if (!out.empty()) out += " + ";
    out += to_string(s.c[k]) + "*z^" + std::to_string(k);
  }
  return out;
}

} // namespace freeplanar
