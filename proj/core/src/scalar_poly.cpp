#include "freeplanar/scalar_poly.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "freeplanar/error.hpp"

namespace freeplanar {

ScalarPoly ScalarPoly::constant(const Rational& c) {
  ScalarPoly p;
  p.add_term({}, c);
  return p;
}

ScalarPoly ScalarPoly::delta(char color, int exponent) {
  ScalarPoly p;
  Mono m;
  if (exponent != 0) m[color] = exponent;
  p.add_term(m, 1);
  return p;
}

void ScalarPoly::add_term(const Mono& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ScalarPoly ScalarPoly::operator+(const ScalarPoly& o) const {
  ScalarPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

ScalarPoly ScalarPoly::operator-() const {
  ScalarPoly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

ScalarPoly ScalarPoly::operator-(const ScalarPoly& o) const { return *this + (-o); }

ScalarPoly ScalarPoly::operator*(const ScalarPoly& o) const {
  ScalarPoly r;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      Mono m = m1;
      for (const auto& [color, e] : m2) {
        int ne = (m.count(color) ? m[color] : 0) + e;
        if (ne == 0) {
          m.erase(color);
        } else {
          m[color] = ne;
        }
      }
      r.add_term(m, c1 * c2);
    }
  }
  return r;
}

ScalarPoly ScalarPoly::scaled(const Rational& c) const {
  ScalarPoly r;
  if (c == 0) return r;
  for (const auto& [m, coef] : terms_) r.terms_.emplace(m, coef * c);
  return r;
}

ScalarPoly ScalarPoly::shifted(char color, int exponent) const {
  return *this * delta(color, exponent);
}

namespace {

template <class T>
T int_pow(const T& base, int e) {
  T r(1);
  T b = base;
  int n = e < 0 ? -e : e;
  for (int i = 0; i < n; ++i) r = r * b;
  return r;
}

} // namespace

Rational ScalarPoly::eval(const std::map<char, Rational>& delta) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (const auto& [color, e] : m) {
      auto it = delta.find(color);
      if (it == delta.end()) fail(ErrorKind::SchemaError, std::string("no value bound for color ") + color);
      if (it->second == 0 && e < 0) fail(ErrorKind::DegenerateDelta, "inverse of zero loop parameter");
      Rational p = int_pow(it->second, e);
      term *= (e < 0) ? Rational(1) / p : p;
    }
    total += term;
  }
  return total;
}

double ScalarPoly::eval(const std::map<char, double>& delta) const {
  double total = 0;
  for (const auto& [m, c] : terms_) {
    double term = to_double(c);
    for (const auto& [color, e] : m) {
      auto it = delta.find(color);
      if (it == delta.end()) fail(ErrorKind::SchemaError, std::string("no value bound for color ") + color);
      term *= std::pow(it->second, e);
    }
    total += term;
  }
  return total;
}

Rational ScalarPoly::as_constant() const {
  if (terms_.empty()) return 0;
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  fail(ErrorKind::SchemaError, "polynomial is not constant: " + str());
}

std::string ScalarPoly::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Mono, Rational>> ordered(terms_.begin(), terms_.end());
  auto total_deg = [](const Mono& m) {
    int d = 0;
    for (const auto& [_, e] : m) d += e;
    return d;
  };
  std::stable_sort(ordered.begin(), ordered.end(), [&](const auto& a, const auto& b) {
    int da = total_deg(a.first), db = total_deg(b.first);
    if (da != db) return da > db;
    return a.first < b.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : ordered) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += (a < 0) ? " - " : " + ";
      if (a < 0) a = -a;
    }
    first = false;
    std::string factors;
    for (const auto& [color, e] : m) {
      if (!factors.empty()) factors += "*";
      factors += std::string("d_") + color;
      if (e != 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty()) {
      out += to_string(a);
    } else {
      if (a != 1) out += to_string(a) + "*";
      out += factors;
    }
  }
  return out;
}

} // namespace freeplanar
