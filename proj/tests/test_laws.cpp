#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "freeplanar/error.hpp"
#include "freeplanar/laws.hpp"

using namespace freeplanar;

namespace {

constexpr double kPi = 3.14159265358979323846;

Rational rat(long long p, long long s = 1) { return Rational(p, s); }

} // namespace

TEST_CASE("moment recurrence reproduces the known low moments") {
  auto cat = fp_moments(rat(1), 5);
  std::vector<Rational> want{rat(1), rat(1), rat(2), rat(5), rat(14), rat(42)};
  CHECK_EQ(cat, want);

  auto two = fp_moments(rat(2), 4);
  std::vector<Rational> want2{rat(1), rat(2), rat(6), rat(22), rat(90)};
  CHECK_EQ(two, want2);
}

TEST_CASE("moment recurrence matches the generating-function route") {
  for (Rational alpha : {rat(1), rat(3, 2), rat(2), rat(7, 2)}) {
    auto rec = fp_moments(alpha, 10);
    auto mgf = fp_mgf_series(alpha, 10);
    REQUIRE_EQ(mgf.order(), 10);
    for (int n = 0; n <= 10; ++n) CHECK_EQ(rec[n], mgf.at(n));
  }
}

TEST_CASE("transform satisfies the defining quadratic") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    auto g = fp_cauchy_transform(alpha);
    for (std::complex<double> z :
         {std::complex<double>(3.0, 1.0), std::complex<double>(-1.0, 2.0),
          std::complex<double>(0.5, -0.7)}) {
      auto G = g(z);
      // z G^2 - (z - alpha + 1) G + 1 = 0
      auto resid = z * G * G - (z - alpha + 1.0) * G + 1.0;
      CHECK_LE(std::abs(resid), 1e-12);
      CHECK_LE(std::abs(std::conj(g(std::conj(z))) - G), 1e-14);
      if (z.imag() > 0) CHECK_LT(G.imag(), 0.0);
    }
  }
}

TEST_CASE("transform agrees with moment partial sums far from the support") {
  double alpha = 0.1;
  auto mom = fp_moments(rat(1, 10), 12);
  for (std::complex<double> z : {std::complex<double>(10.0, 0.0), std::complex<double>(0.0, 10.0)}) {
    auto exact = fp_cauchy(alpha, z);
    auto approx = cauchy_partial_sum(mom, z);
    CHECK_LE(std::abs(exact - approx), 1e-10);
  }

  // Larger rates need the tail bound: remainder below m_{N+1} / (|z|^{N+2} (1 - hi/|z|)).
  auto mom1 = fp_moments(rat(1), 13);
  std::complex<double> z(10.0, 0.0);
  auto exact = fp_cauchy(1.0, z);
  auto approx = cauchy_partial_sum(fp_moments(rat(1), 12), z);
  double hi = 4.0;
  double bound = to_double(mom1[13]) / (std::pow(10.0, 14) * (1 - hi / 10.0));
  CHECK_LE(std::abs(exact - approx), bound);
}

TEST_CASE("transform branch selection fails loudly when ambiguous") {
  CHECK_THROWS_AS(fp_cauchy(1.0, std::complex<double>(2.0, 0.0)), Error);
  CHECK_THROWS_AS(fp_cauchy(1.0, std::complex<double>(0.0, 0.0)), Error);
}

TEST_CASE("boundary extrapolation recovers the density") {
  for (double alpha : {1.0, 1.5}) {
    auto g = fp_cauchy_transform(alpha);
    auto law = fp_density(alpha);
    double x = alpha + 0.5;
    double got = stieltjes_density(g, x);
    CHECK_LE(std::abs(got - law.density(x)), 1e-6);
  }
  auto g1 = fp_cauchy_transform(1.0);
  CHECK_LE(std::abs(stieltjes_density(g1, 2.0) - 1.0 / (2.0 * kPi)), 1e-6);
  CHECK_LE(std::abs(stieltjes_density(g1, 5.0)), 1e-6);
}

TEST_CASE("boundary extrapolation validates its height sequence") {
  auto g = fp_cauchy_transform(1.0);
  CHECK_THROWS_AS(stieltjes_density(g, 2.0, {1e-3}), Error);
  CHECK_THROWS_AS(stieltjes_density(g, 2.0, {1e-3, 1e-3}), Error);
  CHECK_THROWS_AS(stieltjes_density(g, 2.0, {1e-3, -1e-4}), Error);
}

TEST_CASE("density handle knows its support and atom") {
  auto law = fp_density(0.5);
  CHECK_LE(std::abs(law.lo - std::pow(std::sqrt(0.5) - 1, 2)), 1e-15);
  CHECK_LE(std::abs(law.hi - std::pow(std::sqrt(0.5) + 1, 2)), 1e-15);
  REQUIRE_EQ(law.atoms.size(), 1u);
  CHECK_EQ(law.atoms[0].first, 0.0);
  CHECK_LE(std::abs(law.atoms[0].second - 0.5), 1e-15);
  CHECK_EQ(law.density(-1.0), 0.0);
  CHECK_EQ(law.density(0.0), 0.0);
  CHECK_EQ(law.density(law.hi + 1.0), 0.0);

  auto one = fp_density(1.0);
  CHECK(one.atoms.empty());
}

TEST_CASE("density integrates to one with the right mean") {
  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    auto law = fp_density(alpha);
    CHECK_LE(std::abs(law_total_mass(law) - 1.0), 1e-6);
    CHECK_LE(std::abs(law_mean(law) - alpha), 1e-6);
  }
}

TEST_CASE("density matches the boundary extrapolation on an interior grid") {
  for (double alpha : {1.0, 1.5, 2.0}) {
    auto law = fp_density(alpha);
    auto g = fp_cauchy_transform(alpha);
    double a = law.lo + 0.1 * (law.hi - law.lo);
    double b = law.lo + 0.9 * (law.hi - law.lo);
    for (int i = 0; i <= 20; ++i) {
      double x = a + (b - a) * i / 20.0;
      CHECK_LE(std::abs(stieltjes_density(g, x) - law.density(x)), 1e-3);
    }
  }
}

TEST_CASE("reciprocal transform of the free Poisson law is exact") {
  for (Rational alpha : {rat(1), rat(2), rat(5, 2)}) {
    auto m = fp_moments(alpha, 6);
    auto s = s_transform(m);
    REQUIRE_EQ(s.order(), 5);
    // 1 / (z + alpha)
    Series denom(5);
    denom.at(0) = alpha;
    denom.at(1) = 1;
    auto want = series_div(Series::constant(1, 5), denom);
    CHECK(s == want);
  }
}

TEST_CASE("transform and moment recovery are mutually inverse") {
  std::mt19937 rng(2718);
  std::uniform_int_distribution<int> num(-3, 3);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Rational> m{rat(1)};
    int m1 = num(rng);
    m.push_back(rat(m1 == 0 ? 1 : m1));
    for (int k = 2; k <= 6; ++k) m.push_back(rat(num(rng)));
    auto s = s_transform(m);
    auto back = moments_from_s(s, 6);
    CHECK_EQ(back, m);
  }
}

TEST_CASE("transform requires a nonzero first moment") {
  CHECK_THROWS_AS(s_transform({rat(1), rat(0), rat(3)}), Error);
  CHECK_THROWS_AS(s_transform({rat(2), rat(1)}), Error);
  CHECK_THROWS_AS(s_transform({rat(1)}), Error);
}

TEST_CASE("moment recovery reports insufficient data") {
  auto s = s_transform(fp_moments(rat(1), 4));
  CHECK_THROWS_AS(moments_from_s(s, 6), Error);
  Series zero_at_origin(3);
  zero_at_origin.at(1) = 1;
  CHECK_THROWS_AS(moments_from_s(zero_at_origin, 3), Error);
}

TEST_CASE("multiplicative convolution is commutative") {
  auto a = s_transform(fp_moments(rat(1), 5));
  auto b = s_transform(fp_moments(rat(2), 5));
  CHECK(s_multiply(a, b) == s_multiply(b, a));
}

TEST_CASE("closure enumeration matches the transform route") {
  for (int n = 0; n <= 5; ++n) {
    auto via_s = cup_moments_via_s(rat(2), rat(2), n);
    auto direct = fc_cup_moments(rat(2), rat(2), n);
    CHECK_EQ(via_s, direct);
  }
  auto m = cup_moments_via_s(rat(2), rat(2), 3);
  CHECK_EQ(m[0], rat(1));
  CHECK_EQ(m[1], rat(4));
  CHECK_EQ(m[2], rat(28));
  CHECK_EQ(m[3], rat(252));

  auto asym = cup_moments_via_s(rat(3), rat(2), 4);
  auto asym_direct = fc_cup_moments(rat(3), rat(2), 4);
  CHECK_EQ(asym, asym_direct);
}

TEST_CASE("closure enumeration enforces its budget") {
  CHECK_NOTHROW(fc_cup_moments_sym(6));
  CHECK_THROWS_AS(fc_cup_moments_sym(7), Error);
}

TEST_CASE("product transform closed form matches the pipeline") {
  for (auto [da, db] : {std::pair<long long, long long>{2, 2}, {3, 2}, {2, 5}}) {
    auto closed = cup_s_transform(rat(da), rat(db), 6);
    auto y = cup_corner_moments(rat(da), 7);
    // scale corner moments back up and rebuild the transform product
    auto sy = s_transform(y);
    auto sr = s_transform(fp_moments(rat(db), 7));
    auto pipeline = series_truncate(s_multiply(sy, sr), 6);
    CHECK(closed == pipeline);
  }
}

TEST_CASE("alternative printed transform splits from the engine at low order") {
  auto engine = cup_s_transform(rat(2), rat(2), 3);
  auto alt = cup_s_transform_alt(rat(2), rat(2), 3);
  CHECK_EQ(engine.at(0), alt.at(0));
  CHECK_EQ(engine.at(1), alt.at(1));
  CHECK_NE(engine.at(2), alt.at(2));
  CHECK_EQ(engine.at(2), rat(21, 8));
  CHECK_EQ(alt.at(2), rat(1, 8));

  auto engine32 = cup_s_transform(rat(3), rat(2), 3);
  auto alt32 = cup_s_transform_alt(rat(3), rat(2), 3);
  CHECK_EQ(engine32.at(0), alt32.at(0));
  CHECK_NE(engine32.at(1), alt32.at(1));
}

TEST_CASE("corner moments are the law moments compressed by the loop value") {
  auto m = cup_corner_moments(rat(2), 3);
  std::vector<Rational> want{rat(1), rat(1), rat(3), rat(11)};
  CHECK_EQ(m, want);
  CHECK_THROWS_AS(cup_corner_moments(rat(0), 3), Error);
}

TEST_CASE("joint moments obey the free independence formulas") {
  std::vector<Rational> ma{rat(1), rat(2), rat(6), rat(22), rat(90)};
  std::vector<Rational> mb{rat(1), rat(3), rat(12), rat(57), rat(300)};
  CHECK_EQ(free_joint_moment(ma, mb, "s"), ma[1]);
  CHECK_EQ(free_joint_moment(ma, mb, "t"), mb[1]);
  CHECK_EQ(free_joint_moment(ma, mb, "st"), ma[1] * mb[1]);
  CHECK_EQ(free_joint_moment(ma, mb, "ss"), ma[2]);
  auto want = ma[1] * ma[1] * mb[2] + ma[2] * mb[1] * mb[1] - ma[1] * ma[1] * mb[1] * mb[1];
  CHECK_EQ(free_joint_moment(ma, mb, "stst"), want);
  CHECK_EQ(free_joint_moment(ma, mb, "tsts"), want);
}

TEST_CASE("joint moments validate their inputs") {
  std::vector<Rational> ma{rat(1), rat(2), rat(6)};
  std::vector<Rational> mb{rat(1), rat(3), rat(12)};
  CHECK_THROWS_AS(free_joint_moment(ma, mb, "sx"), Error);
  CHECK_THROWS_AS(free_joint_moment(ma, mb, "sss"), Error);
  CHECK_THROWS_AS(free_joint_moment({rat(2), rat(1)}, mb, "st"), Error);
}

TEST_CASE("compression rates") {
  CHECK_EQ(fp_pair_compression_alpha(1.0, 1.0), 1.0);
  CHECK_EQ(fp_pair_compression_alpha(1.0, 3.0), 0.5);
  CHECK_EQ(fp_corner_compression_alpha(1.0, 2.0), 0.5);
  CHECK_THROWS_AS(fp_pair_compression_alpha(0.0, 1.0), Error);
  CHECK_THROWS_AS(fp_corner_compression_alpha(1.0, -1.0), Error);
}
