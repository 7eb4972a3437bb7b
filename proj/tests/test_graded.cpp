#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "freeplanar/error.hpp"
#include "freeplanar/graded.hpp"
#include "freeplanar/laws.hpp"

using namespace freeplanar;

namespace {

const ShadedWord kEmpty{};

GradedElement random_closed_element(std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> nc(1, 2);
  std::uniform_int_distribution<int> letter(0, 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  GradedElement x(kEmpty);
  int comps = nc(rng);
  for (int c = 0; c < comps; ++c) {
    std::string w;
    int half = std::uniform_int_distribution<int>(1, max_len / 2)(rng);
    for (int i = 0; i < 2 * half; ++i) w += (letter(rng) == 0 ? 'a' : 'b');
    auto ms = enumerate_matchings(w);
    if (ms.empty()) continue;
    ShadedWord beta{w, Shading::None};
    DiagramElement e(ShadedWord{}, beta);
    for (const auto& m : ms) {
      int k = coeff(rng);
      if (k != 0) e.add_term(m, ScalarPoly::constant(Rational(k)));
    }
    if (e.is_zero()) continue;
    x.add_component(beta, e);
  }
  return x;
}

GradedElement pure_color_element(std::mt19937& rng, char color, int half_len) {
  std::string w(static_cast<size_t>(2 * half_len), color);
  auto ms = enumerate_matchings(w);
  std::uniform_int_distribution<int> coeff(1, 4);
  ShadedWord beta{w, Shading::None};
  DiagramElement e(ShadedWord{}, beta);
  for (const auto& m : ms) e.add_term(m, ScalarPoly::constant(Rational(coeff(rng))));
  GradedElement x(kEmpty);
  x.add_component(beta, e);
  return x;
}

GradedElement centered(const GradedElement& x) {
  return x - GradedElement::unit(x.side()).scaled(graded_trace(x));
}

} // namespace

TEST_CASE("unit has trace one and is neutral for the product") {
  auto unit = GradedElement::unit(kEmpty);
  CHECK(graded_trace(unit) == ScalarPoly::one());
  auto cup = GradedElement::cup('c');
  CHECK(wedge(unit, cup) == cup);
  CHECK(wedge(cup, unit) == cup);
}

TEST_CASE("one-color cup moments match the free Poisson law at the loop value") {
  auto cup = GradedElement::cup('c');
  auto ms = moments(cup, 6);
  auto fp = fp_moments(Rational(2), 6);
  std::map<char, Rational> two{{'c', 2}};
  for (int n = 0; n <= 6; ++n) CHECK_EQ(ms[n].eval(two), fp[n]);
}

TEST_CASE("double-cup moments match the closure enumeration oracle") {
  auto dc = GradedElement::fc_double_cup();
  auto ms = moments(dc, 3);
  auto oracle = fc_cup_moments_sym(3);
  for (int n = 0; n <= 3; ++n) CHECK(ms[n] == oracle[n]);
}

TEST_CASE("insertion map sends the cup to itself plus the loop scalar") {
  auto cup = GradedElement::cup('c');
  auto expect = cup + GradedElement::unit(kEmpty).scaled(ScalarPoly::one().shifted('c', 1));
  CHECK(phi(cup) == expect);
}

TEST_CASE("insertion map turns the product into the star product") {
  std::mt19937 rng(31337);
  for (int rep = 0; rep < 30; ++rep) {
    auto x = random_closed_element(rng, 6);
    auto y = random_closed_element(rng, 6);
    CHECK(phi(wedge(x, y)) == star(phi(x), phi(y)));
  }
}

TEST_CASE("trace equals the empty component after insertion") {
  std::mt19937 rng(424242);
  for (int rep = 0; rep < 30; ++rep) {
    auto x = random_closed_element(rng, 6);
    CHECK(empty_component_scalar(phi(x)) == graded_trace(x));
  }
}

TEST_CASE("product is associative and the trace is cyclic") {
  std::mt19937 rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    auto x = random_closed_element(rng, 4);
    auto y = random_closed_element(rng, 4);
    auto z = random_closed_element(rng, 4);
    CHECK(wedge(wedge(x, y), z) == wedge(x, wedge(y, z)));
    CHECK(graded_trace(wedge(x, y)) == graded_trace(wedge(y, x)));
  }
}

TEST_CASE("adjoint is an involution and reverses the product") {
  std::mt19937 rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    auto x = random_closed_element(rng, 4);
    auto y = random_closed_element(rng, 4);
    CHECK(x.adjoint().adjoint() == x);
    CHECK(wedge(x, y).adjoint() == wedge(y.adjoint(), x.adjoint()));
  }
}

TEST_CASE("alternating centered one-color products have zero trace") {
  std::mt19937 rng(8);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<GradedElement> factors;
    for (int i = 0; i < 4; ++i) {
      char color = (i % 2 == 0) ? 'a' : 'b';
      int half = std::uniform_int_distribution<int>(1, 2)(rng);
      factors.push_back(centered(pure_color_element(rng, color, half)));
    }
    GradedElement prod = factors[0];
    for (size_t i = 1; i < factors.size(); ++i) {
      prod = wedge(prod, factors[i]);
      CHECK(graded_trace(prod) == ScalarPoly());
    }
  }
}

TEST_CASE("star rejects mismatched side words") {
  auto x = GradedElement::cup('c');
  auto y = GradedElement::unit(ShadedWord{"a", Shading::None});
  CHECK_THROWS_AS(star(x, y), Error);
}

TEST_CASE("rectangle diagrams with all-through tops compose the insertion map") {
  ShadedWord bottom{"aabb", Shading::None};
  ShadedWord top{"ab", Shading::None};
  auto epis = enumerate_epi(bottom, top);
  for (const auto& e : epis) {
    CHECK_EQ(e.bottom, bottom);
    CHECK_EQ(e.top, top);
    int nb = bottom.size();
    for (int t = 0; t < top.size(); ++t) CHECK_LT(e.match[nb + t], nb);
  }
  auto all = enumerate_epi_all(bottom);
  size_t with_top = 0;
  for (const auto& e : all)
    if (e.top == top) ++with_top;
  CHECK_EQ(with_top, epis.size());
}
