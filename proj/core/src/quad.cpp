#include "freeplanar/quad.hpp"

#include <cmath>
#include <cstdlib>

namespace freeplanar {

Rational parse_rational(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    fail(ErrorKind::SchemaError, "not a rational: '" + s + "'");
  }
}

namespace {

bool is_square(long long d, long long& root) {
  if (d < 0) return false;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(d)));
  for (long long c = r > 1 ? r - 1 : 0; c <= r + 1; ++c) {
    if (c * c == d) {
      root = c;
      return true;
    }
  }
  return false;
}

} // namespace

Quad::Quad(Rational rx, Rational ry, long long rd) : x(std::move(rx)), y(std::move(ry)), d(rd) {
  if (d < 0) fail(ErrorKind::SchemaError, "negative radicand");
  long long root = 0;
  if (d != 0 && is_square(d, root)) {
    x += y * root;
    y = 0;
    d = 0;
  }
  if (y == 0) d = 0;
}

Quad Quad::operator-() const {
  Quad r = *this;
  r.x = -r.x;
  r.y = -r.y;
  return r;
}

namespace {

long long merge_field(const Quad& a, const Quad& b) {
  if (a.d == 0) return b.d;
  if (b.d == 0 || a.d == b.d) return a.d;
  fail(ErrorKind::SchemaError, "mixed radicands in exact arithmetic");
}

} // namespace

Quad Quad::operator+(const Quad& o) const {
  long long rd = merge_field(*this, o);
  return Quad(x + o.x, y + o.y, rd);
}

Quad Quad::operator-(const Quad& o) const { return *this + (-o); }

Quad Quad::operator*(const Quad& o) const {
  long long rd = merge_field(*this, o);
  Rational rx = x * o.x;
  if (rd != 0) rx += y * o.y * rd;
  return Quad(rx, x * o.y + y * o.x, rd);
}

Quad Quad::inverse() const {
  if (is_zero()) fail(ErrorKind::NumericFailure, "division by zero");
  if (d == 0) return Quad(Rational(1) / x);
  Rational n = x * x - y * y * d;
  return Quad(x / n, -y / n, d);
}

Quad Quad::operator/(const Quad& o) const { return *this * o.inverse(); }

bool Quad::operator==(const Quad& o) const {
  return (*this - o).is_zero();
}

int Quad::sign() const {
  if (y == 0) return freeplanar::sign(x);
  if (x == 0) return freeplanar::sign(y);
  int sx = freeplanar::sign(x), sy = freeplanar::sign(y);
  if (sx == sy) return sx;
  // x and y have opposite signs: compare x^2 against y^2 d.
  int cmp = freeplanar::sign(x * x - y * y * d);
  return sx > 0 ? cmp : -cmp;
}

double Quad::to_double() const {
  double v = freeplanar::to_double(x);
  if (d != 0) v += freeplanar::to_double(y) * std::sqrt(static_cast<double>(d));
  return v;
}

std::string Quad::str() const {
  if (d == 0) return to_string(x);
  std::string s;
  if (y == 1) {
    s = "";
  } else if (y == -1) {
    s = "-";
  } else if (denominator(y) == 1) {
    s = numerator(y).str();
  } else {
    s = "(" + to_string(y) + ")";
  }
  s += "√" + std::to_string(d);
  if (x != 0) {
    if (x > 0) s += "+";
    s += to_string(x);
  }
  return s;
}

long long resolve_sqrt_tag(const std::string& tag) {
  std::string t = tag;
  if (t.rfind("sqrt", 0) == 0) t = t.substr(4);
  char* end = nullptr;
  long long d = std::strtoll(t.c_str(), &end, 10);
  if (end == nullptr || *end != '\0' || d <= 0)
    fail(ErrorKind::SchemaError, "bad exact-field tag: '" + tag + "'");
  return d;
}

} // namespace freeplanar
