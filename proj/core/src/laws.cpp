#include "freeplanar/laws.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "freeplanar/error.hpp"

namespace freeplanar {

std::vector<Rational> fp_moments(const Rational& alpha, int count) {
  if (count < 0) fail(ErrorKind::SchemaError, "moment count must be nonnegative");
  std::vector<Rational> m(count + 1);
  m[0] = 1;
  for (int n = 1; n <= count; ++n) {
    Rational acc = (alpha - 1) * m[n - 1];
    for (int k = 0; k < n; ++k) acc += m[k] * m[n - 1 - k];
    m[n] = acc;
  }
  return m;
}

Series fp_mgf_series(const Rational& alpha, int order) {
  if (order < 0) fail(ErrorKind::SchemaError, "series order must be nonnegative");
  // phi = (1 - (alpha-1) z - sqrt(1 - 2(alpha+1) z + (alpha-1)^2 z^2)) / (2z);
  // the numerator vanishes at 0, so the division is a coefficient shift.
  Series u(order + 1);
  if (u.order() >= 1) u.c[1] = -2 * (alpha + 1);
  if (u.order() >= 2) u.c[2] = (alpha - 1) * (alpha - 1);
  Series root = series_sqrt1p(u);
  Series num(order + 1);
  num.c[0] = 1 - root.c[0];
  if (num.order() >= 1) num.c[1] = -(alpha - 1) - root.c[1];
  for (int k = 2; k <= num.order(); ++k) num.c[k] = -root.c[k];
  Series phi(order);
  for (int k = 0; k <= order; ++k) phi.c[k] = num.c[k + 1] / 2;
  return phi;
}

std::complex<double> fp_cauchy(double alpha, std::complex<double> z) {
  if (z == std::complex<double>(0.0, 0.0))
    fail(ErrorKind::NumericFailure, "Cauchy transform evaluated at the origin");
  const std::complex<double> w = 1.0 / z;
  const double am1 = alpha - 1.0;
  const std::complex<double> disc = 1.0 - 2.0 * (alpha + 1.0) * w + am1 * am1 * w * w;
  const std::complex<double> root = std::sqrt(disc);
  const std::complex<double> base = 1.0 - am1 * w;
  const std::complex<double> g_plus = (base + root) / 2.0;
  const std::complex<double> g_minus = (base - root) / 2.0;
  if (z.imag() != 0.0) {
    const bool ok_plus = z.imag() > 0.0 ? g_plus.imag() < 0.0 : g_plus.imag() > 0.0;
    const bool ok_minus = z.imag() > 0.0 ? g_minus.imag() < 0.0 : g_minus.imag() > 0.0;
    if (ok_plus == ok_minus)
      fail(ErrorKind::BranchAmbiguity, "half-plane sign test does not single out a branch");
    return ok_plus ? g_plus : g_minus;
  }
  const double d_plus = std::abs(z * g_plus - 1.0);
  const double d_minus = std::abs(z * g_minus - 1.0);
  if (std::abs(d_plus - d_minus) <= 1e-12 * (d_plus + d_minus + 1.0))
    fail(ErrorKind::BranchAmbiguity, "normalization test ties on the real axis");
  return d_plus < d_minus ? g_plus : g_minus;
}

CauchyTransform fp_cauchy_transform(double alpha) {
  return [alpha](std::complex<double> z) { return fp_cauchy(alpha, z); };
}

std::complex<double> cauchy_partial_sum(const std::vector<Rational>& moments,
                                        std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (int n = static_cast<int>(moments.size()) - 1; n >= 0; --n)
    acc = (acc + to_double(moments[n])) / z;
  return acc;
}

double stieltjes_density(const CauchyTransform& g, double x,
                         const std::vector<double>& y_seq) {
  const int k = static_cast<int>(y_seq.size());
  if (k < 2) fail(ErrorKind::SchemaError, "need at least two heights to extrapolate");
  std::vector<double> p(k);
  for (int i = 0; i < k; ++i) {
    if (y_seq[i] <= 0.0) fail(ErrorKind::SchemaError, "heights must be positive");
    p[i] = -g(std::complex<double>(x, y_seq[i])).imag() / std::numbers::pi;
  }
  double prev = p[k - 1];
  for (int m = 1; m < k; ++m) {
    for (int i = 0; i + m < k; ++i) {
      const double denom = y_seq[i] - y_seq[i + m];
      if (denom == 0.0) fail(ErrorKind::SchemaError, "heights must be distinct");
      p[i] = (y_seq[i] * p[i + 1] - y_seq[i + m] * p[i]) / denom;
    }
    if (m < k - 1) prev = p[k - 1 - m];
  }
  const double value = p[0];
  if (std::abs(value - prev) > 1e-6 + 1e-4 * std::abs(value))
    fail(ErrorKind::NumericFailure, "density extrapolation did not settle");
  return value;
}

Law fp_density(double alpha) {
  if (alpha < 0.0) fail(ErrorKind::SchemaError, "free Poisson rate must be nonnegative");
  const double sa = std::sqrt(alpha);
  Law law;
  law.lo = (sa - 1.0) * (sa - 1.0);
  law.hi = (sa + 1.0) * (sa + 1.0);
  if (alpha < 1.0) law.atoms.push_back({0.0, 1.0 - alpha});
  const double lo = law.lo, hi = law.hi;
  law.density = [lo, hi](double x) {
    if (x <= 0.0) return 0.0;
    const double rad = (x - lo) * (hi - x);
    if (rad <= 0.0) return 0.0;
    return std::sqrt(rad) / (2.0 * std::numbers::pi * x);
  };
  return law;
}

namespace {

// Gauss-Legendre 8-point rule on [-1, 1].
constexpr double kGlNode[4] = {0.1834346424956498, 0.5255324099163290,
                               0.7966664774136267, 0.9602898564975363};
constexpr double kGlWeight[4] = {0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};

// Integral of weight(x) * density(x) over [lo, hi] under x = mid + half sin t,
// which absorbs the square-root edge behavior of the spectral densities; no
// endpoint evaluations.
double law_weighted_integral(const Law& law,
                             const std::function<double(double)>& weight) {
  if (!(law.hi > law.lo)) return 0.0;
  const double mid = (law.lo + law.hi) / 2.0;
  const double half = (law.hi - law.lo) / 2.0;
  const int panels = 256;
  const double width = std::numbers::pi / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double center = -std::numbers::pi / 2.0 + (p + 0.5) * width;
    for (int j = 0; j < 4; ++j) {
      for (int s = -1; s <= 1; s += 2) {
        const double t = center + s * kGlNode[j] * width / 2.0;
        const double x = mid + half * std::sin(t);
        acc += kGlWeight[j] * (width / 2.0) * weight(x) * law.density(x) * half * std::cos(t);
      }
    }
  }
  return acc;
}

} // namespace

double law_total_mass(const Law& law) {
  double mass = law_weighted_integral(law, [](double) { return 1.0; });
  for (const auto& a : law.atoms) mass += a.second;
  return mass;
}

double law_mean(const Law& law) {
  double mean = law_weighted_integral(law, [](double x) { return x; });
  for (const auto& a : law.atoms) mean += a.first * a.second;
  return mean;
}

Series s_transform(const std::vector<Rational>& moments) {
  if (moments.empty() || moments[0] != 1)
    fail(ErrorKind::SchemaError, "moment list must start with m[0] = 1");
  const int n = static_cast<int>(moments.size()) - 1;
  if (n < 1 || moments[1] == 0)
    fail(ErrorKind::NonInvertible, "vanishing first moment admits no S-transform");
  Series psi(n);
  for (int kk = 1; kk <= n; ++kk) psi.c[kk] = moments[kk];
  Series chi = series_reversion(psi);
  Series shifted(n - 1);
  for (int kk = 0; kk <= n - 1; ++kk) shifted.c[kk] = chi.c[kk + 1];
  Series zp1(n - 1);
  zp1.c[0] = 1;
  if (zp1.order() >= 1) zp1.c[1] = 1;
  return series_mul(zp1, shifted);
}

Series s_multiply(const Series& a, const Series& b) { return series_mul(a, b); }

std::vector<Rational> moments_from_s(const Series& s, int count) {
  if (count < 0) fail(ErrorKind::SchemaError, "moment count must be nonnegative");
  std::vector<Rational> m(count + 1);
  m[0] = 1;
  if (count == 0) return m;
  if (s.order() < count - 1)
    fail(ErrorKind::InsufficientMoments, "S-transform truncated below the requested order");
  if (s.c[0] == 0) fail(ErrorKind::NonInvertible, "S-transform vanishes at 0");
  Series zp1(count - 1);
  zp1.c[0] = 1;
  if (zp1.order() >= 1) zp1.c[1] = 1;
  Series q = series_div(series_truncate(s, count - 1), zp1);
  Series chi(count);
  for (int kk = 1; kk <= count; ++kk) chi.c[kk] = q.c[kk - 1];
  Series psi = series_reversion(chi);
  for (int kk = 1; kk <= count; ++kk) m[kk] = psi.c[kk];
  return m;
}

namespace {

// Non-crossing color-matched pairings of word[lo..hi), by matching the first
// point and splitting; independent of the diagram engine on purpose (it is
// the oracle for it).
void closure_rec(const std::string& word, std::vector<int>& match, int lo, int hi,
                 const std::function<void()>& emit) {
  if (lo >= hi) {
    emit();
    return;
  }
  for (int j = lo + 1; j < hi; j += 2) {
    if (word[j] != word[lo]) continue;
    match[lo] = j;
    match[j] = lo;
    closure_rec(word, match, lo + 1, j,
                [&] { closure_rec(word, match, j + 1, hi, emit); });
  }
}

int count_cycles(const std::vector<int>& a, const std::vector<int>& b,
                 const std::string& word, char color) {
  const int n = static_cast<int>(a.size());
  std::vector<char> seen(n, 0);
  int cycles = 0;
  for (int start = 0; start < n; ++start) {
    if (seen[start] || word[start] != color) continue;
    ++cycles;
    int p = start;
    bool use_a = true;
    do {
      seen[p] = 1;
      p = use_a ? a[p] : b[p];
      use_a = !use_a;
    } while (p != start);
  }
  return cycles;
}

} // namespace

std::vector<ScalarPoly> fc_cup_moments_sym(int count) {
  if (count < 0) fail(ErrorKind::SchemaError, "moment count must be nonnegative");
  if (count > 6) fail(ErrorKind::BudgetExceeded, "cup moment enumeration capped at order 6");
  std::vector<ScalarPoly> out(count + 1);
  out[0] = ScalarPoly::one();
  for (int n = 1; n <= count; ++n) {
    std::string word;
    for (int j = 0; j < n; ++j) word += "abba";
    const int len = 4 * n;
    std::vector<int> cup(len);
    for (int j = 0; j < n; ++j) {
      cup[4 * j] = 4 * j + 3;
      cup[4 * j + 3] = 4 * j;
      cup[4 * j + 1] = 4 * j + 2;
      cup[4 * j + 2] = 4 * j + 1;
    }
    std::vector<int> closure(len, -1);
    ScalarPoly total;
    closure_rec(word, closure, 0, len, [&] {
      const int ka = count_cycles(cup, closure, word, 'a');
      const int kb = count_cycles(cup, closure, word, 'b');
      total = total + ScalarPoly::one().shifted('a', ka).shifted('b', kb);
    });
    out[n] = total;
  }
  return out;
}

std::vector<Rational> fc_cup_moments(const Rational& delta_a,
                                     const Rational& delta_b, int count) {
  const auto sym = fc_cup_moments_sym(count);
  const std::map<char, Rational> delta = {{'a', delta_a}, {'b', delta_b}};
  std::vector<Rational> out(sym.size());
  for (size_t i = 0; i < sym.size(); ++i) out[i] = sym[i].eval(delta);
  return out;
}

namespace {

// kappa[1..top] from m via the first-block recursion
// m_n = sum_k kappa_k [z^{n-k}] M(z)^k.
std::vector<Rational> cumulants_from_moments(const std::vector<Rational>& m, int top) {
  Series mom(top);
  for (int kk = 0; kk <= top; ++kk) mom.c[kk] = m[kk];
  std::vector<Series> powers(top + 1, Series(top));
  powers[0].c[0] = 1;
  for (int kk = 1; kk <= top; ++kk) powers[kk] = series_mul(powers[kk - 1], mom);
  std::vector<Rational> kappa(top + 1);
  for (int n = 1; n <= top; ++n) {
    Rational acc = m[n];
    for (int kk = 1; kk < n; ++kk) acc -= kappa[kk] * powers[kk].c[n - kk];
    kappa[n] = acc;
  }
  return kappa;
}

struct JointMomentContext {
  std::vector<Rational> kappa_s;
  std::vector<Rational> kappa_t;
  std::map<std::string, Rational> memo;

  Rational tau(const std::string& w) {
    if (w.empty()) return Rational(1);
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    const auto& kappa = w[0] == 's' ? kappa_s : kappa_t;
    std::vector<int> legs;
    for (int i = 0; i < static_cast<int>(w.size()); ++i)
      if (w[i] == w[0]) legs.push_back(i);
    Rational total = 0;
    // The block of position 0 picks a subset of the same-letter positions;
    // the gaps between consecutive legs factor freely.
    const int extra = static_cast<int>(legs.size()) - 1;
    for (unsigned mask = 0; mask < (1u << extra); ++mask) {
      std::vector<int> block = {0};
      for (int i = 0; i < extra; ++i)
        if (mask & (1u << i)) block.push_back(legs[i + 1]);
      Rational term = kappa[block.size()];
      block.push_back(static_cast<int>(w.size()));
      for (size_t i = 0; i + 1 < block.size() && term != 0; ++i) {
        const int from = block[i] + 1;
        const int to = block[i + 1];
        if (to > from) term *= tau(w.substr(from, to - from));
      }
      total += term;
    }
    memo.emplace(w, total);
    return total;
  }
};

} // namespace

Rational free_joint_moment(const std::vector<Rational>& ma,
                           const std::vector<Rational>& mb,
                           const std::string& pattern) {
  int count_s = 0, count_t = 0;
  for (char ch : pattern) {
    if (ch == 's') ++count_s;
    else if (ch == 't') ++count_t;
    else fail(ErrorKind::SchemaError, "pattern letters must be 's' or 't'");
  }
  if (ma.empty() || ma[0] != 1 || mb.empty() || mb[0] != 1)
    fail(ErrorKind::SchemaError, "moment lists must start with m[0] = 1");
  if (static_cast<int>(ma.size()) <= count_s || static_cast<int>(mb.size()) <= count_t)
    fail(ErrorKind::InsufficientMoments, "pattern needs higher moments than provided");
  JointMomentContext ctx;
  ctx.kappa_s = cumulants_from_moments(ma, count_s);
  ctx.kappa_t = cumulants_from_moments(mb, count_t);
  return ctx.tau(pattern);
}

std::vector<Rational> cup_corner_moments(const Rational& delta_a, int count) {
  if (delta_a <= 0) fail(ErrorKind::DegenerateDelta, "loop parameter must be positive");
  auto m = fp_moments(delta_a, count);
  for (int n = 1; n <= count; ++n) m[n] /= delta_a;
  return m;
}

std::vector<Rational> cup_moments_via_s(const Rational& delta_a,
                                        const Rational& delta_b, int count) {
  if (delta_a <= 0 || delta_b <= 0)
    fail(ErrorKind::DegenerateDelta, "loop parameters must be positive");
  std::vector<Rational> out(count + 1);
  out[0] = 1;
  if (count == 0) return out;
  const Series sy = s_transform(cup_corner_moments(delta_a, count));
  const Series sr = s_transform(fp_moments(delta_b, count));
  const auto prod = moments_from_s(s_multiply(sy, sr), count);
  for (int n = 1; n <= count; ++n) out[n] = delta_a * prod[n];
  return out;
}

Series cup_s_transform(const Rational& delta_a, const Rational& delta_b, int order) {
  if (delta_b == 0) fail(ErrorKind::DegenerateDelta, "loop parameter must be nonzero");
  Series num = Series::constant(1, order);
  Series den(order);
  den.c[0] = delta_b;
  if (order >= 1) den.c[1] = delta_a * delta_b + 1;
  if (order >= 2) den.c[2] = delta_a;
  return series_div(num, den);
}

Series cup_s_transform_alt(const Rational& delta_a, const Rational& delta_b, int order) {
  if (delta_b == 0) fail(ErrorKind::DegenerateDelta, "loop parameter must be nonzero");
  auto linear = [order](const Rational& c0, const Rational& c1) {
    Series s(order);
    s.c[0] = c0;
    if (order >= 1) s.c[1] = c1;
    return s;
  };
  Series num = series_mul(series_mul(linear(1, 1), linear(1, 1)),
                          series_mul(linear(-1, 1), linear(-1, delta_a)));
  Series den = series_mul(linear(delta_b, delta_b - 1), linear(1, delta_a - 1));
  return series_div(num, den);
}

double fp_pair_compression_alpha(double mu_v, double mu_w) {
  if (mu_v <= 0.0 || mu_w <= 0.0) fail(ErrorKind::SchemaError, "trace weights must be positive");
  return 2.0 * std::min(mu_v, mu_w) / (mu_v + mu_w);
}

double fp_corner_compression_alpha(double mu_v, double mu_w) {
  if (mu_v <= 0.0 || mu_w <= 0.0) fail(ErrorKind::SchemaError, "trace weights must be positive");
  return mu_v / mu_w;
}

} // namespace freeplanar
