#include "freeplanar/graded.hpp"

#include <bit>
#include <set>

#include "freeplanar/error.hpp"
#include "glue.hpp"

namespace freeplanar {

namespace {

Matching band_matching(int s) {
  Matching m(2 * s);
  for (int i = 0; i < s; ++i) {
    m[i] = 2 * s - 1 - i;
    m[2 * s - 1 - i] = i;
  }
  return m;
}

ShadedWord standing_bottom(const ShadedWord& word) {
  ShadedWord empty;
  empty.initial = word.npm() ? word.initial : Shading::None;
  return empty;
}

DiagramElement empty_standing(const ShadedWord& word) {
  return DiagramElement(standing_bottom(word), word);
}

} // namespace

ShadedWord GradedElement::component_word(const ShadedWord& beta) const {
  return concat(reversed(side_), concat(beta, side_));
}

GradedElement GradedElement::unit(const ShadedWord& side) {
  GradedElement e(side);
  ShadedWord beta;
  beta.initial = side.initial;
  e.comps_.emplace(beta, DiagramElement::standing(e.component_word(beta), band_matching(side.size())));
  return e;
}

GradedElement GradedElement::from_component(const ShadedWord& side, const ShadedWord& beta,
                                            const DiagramElement& standing) {
  GradedElement e(side);
  ShadedWord w = e.component_word(beta);
  if (standing.bottom() != standing_bottom(w) || standing.top() != w)
    fail(ErrorKind::SideWordMismatch,
         "component must be a standing element over '" + w.str() + "'");
  if (!standing.is_zero()) e.comps_.emplace(beta, standing);
  return e;
}

GradedElement GradedElement::cup(char color) {
  ShadedWord beta;
  beta.letters = std::string(2, color);
  return from_component(ShadedWord{}, beta, DiagramElement::standing(beta, {1, 0}));
}

GradedElement GradedElement::fc_double_cup() {
  ShadedWord beta;
  beta.letters = "abba";
  return from_component(ShadedWord{}, beta, DiagramElement::standing(beta, {3, 2, 1, 0}));
}

bool GradedElement::is_zero() const {
  for (const auto& [_, e] : comps_)
    if (!e.is_zero()) return false;
  return true;
}

void GradedElement::add_component(const ShadedWord& beta, const DiagramElement& e) {
  if (e.is_zero()) return;
  auto it = comps_.find(beta);
  if (it == comps_.end()) {
    comps_.emplace(beta, e);
  } else {
    it->second = it->second + e;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

GradedElement GradedElement::operator+(const GradedElement& o) const {
  if (side_ != o.side_) fail(ErrorKind::SideWordMismatch, "sum over different side words");
  GradedElement r = *this;
  for (const auto& [b, e] : o.comps_) r.add_component(b, e);
  return r;
}

GradedElement GradedElement::operator-(const GradedElement& o) const {
  return *this + o.scaled(Rational(-1));
}

GradedElement GradedElement::scaled(const ScalarPoly& s) const {
  GradedElement r(side_);
  if (s.is_zero()) return r;
  for (const auto& [b, e] : comps_) r.comps_.emplace(b, e.scaled(s));
  return r;
}

bool GradedElement::operator==(const GradedElement& o) const {
  return side_ == o.side_ && comps_ == o.comps_;
}

GradedElement GradedElement::adjoint() const {
  GradedElement r(side_);
  for (const auto& [b, e] : comps_) {
    ShadedWord rb = reversed(b);
    int n = e.top().size();
    DiagramElement mirrored = empty_standing(r.component_word(rb));
    for (const auto& [m, c] : e.combo()) {
      Matching fm(n);
      for (int i = 0; i < n; ++i) fm[n - 1 - i] = n - 1 - m[i];
      mirrored.add_term(fm, c);
    }
    r.add_component(rb, mirrored);
  }
  return r;
}

GradedElement wedge(const GradedElement& x, const GradedElement& y) {
  if (x.side() != y.side()) fail(ErrorKind::SideWordMismatch, "wedge over different side words");
  int s = x.side().size();
  GradedElement r(x.side());
  for (const auto& [b1, d1] : x.components()) {
    for (const auto& [b2, d2] : y.components()) {
      int n1 = d1.top().size(), n2 = d2.top().size();
      std::vector<std::pair<int, int>> links;
      for (int j = 0; j < s; ++j) links.emplace_back(n1 - 1 - j, j);
      std::vector<int> keep;
      for (int i = 0; i < n1 - s; ++i) keep.push_back(i);
      for (int i = s; i < n2; ++i) keep.push_back(n1 + i);
      ShadedWord beta = concat(b1, b2);
      DiagramElement out = empty_standing(r.component_word(beta));
      for (const auto& [m1, c1] : d1.combo()) {
        for (const auto& [m2, c2] : d2.combo()) {
          auto g = detail::glue(m1, d1.top().letters, m2, d2.top().letters, links, keep);
          if (!g) fail(ErrorKind::NumericFailure, "internal: wedge color mismatch");
          out.add_term(g->match, c1 * c2 * loop_monomial(g->loops));
        }
      }
      r.add_component(beta, out);
    }
  }
  return r;
}

ScalarPoly graded_trace(const GradedElement& x) {
  int s = x.side().size();
  ScalarPoly total;
  for (const auto& [beta, d] : x.components()) {
    int n = d.top().size();
    const std::string& colors = d.top().letters;
    for (const auto& closure_beta : enumerate_matchings(beta.letters)) {
      Matching closure(n, -1);
      for (int i = 0; i < s; ++i) {
        closure[i] = n - 1 - i;
        closure[n - 1 - i] = i;
      }
      for (int i = 0; i < beta.size(); ++i) closure[s + i] = s + closure_beta[i];
      for (const auto& [m, c] : d.combo())
        total = total + c * loop_monomial(union_cycles(m, closure, colors));
    }
  }
  for (char c : x.side().letters) total = total.shifted(c, -1);
  return total;
}

GradedElement star(const GradedElement& x, const GradedElement& y) {
  if (x.side() != y.side()) fail(ErrorKind::SideWordMismatch, "star over different side words");
  int s = x.side().size();
  GradedElement r(x.side());
  for (const auto& [b1, d1] : x.components()) {
    for (const auto& [b2, d2] : y.components()) {
      int n1 = d1.top().size(), n2 = d2.top().size();
      int kmax = std::min(b1.size(), b2.size());
      for (int k = 0; k <= kmax; ++k) {
        bool caps_match = true;
        for (int j = 0; j < k; ++j)
          if (b1.letters[b1.size() - 1 - j] != b2.letters[j]) {
            caps_match = false;
            break;
          }
        if (!caps_match) continue;
        int g = s + k;
        std::vector<std::pair<int, int>> links;
        for (int j = 0; j < g; ++j) links.emplace_back(n1 - 1 - j, j);
        std::vector<int> keep;
        for (int i = 0; i < n1 - g; ++i) keep.push_back(i);
        for (int i = g; i < n2; ++i) keep.push_back(n1 + i);
        ShadedWord beta{b1.letters.substr(0, b1.size() - k) + b2.letters.substr(k), b1.initial};
        DiagramElement out = empty_standing(r.component_word(beta));
        for (const auto& [m1, c1] : d1.combo()) {
          for (const auto& [m2, c2] : d2.combo()) {
            auto gl = detail::glue(m1, d1.top().letters, m2, d2.top().letters, links, keep);
            if (!gl) fail(ErrorKind::NumericFailure, "internal: star color mismatch");
            out.add_term(gl->match, c1 * c2 * loop_monomial(gl->loops));
          }
        }
        r.add_component(beta, out);
      }
    }
  }
  return r;
}

std::vector<EpiDiagram> enumerate_epi(const ShadedWord& bottom, const ShadedWord& top) {
  require_valid_word(bottom);
  require_valid_word(top);
  std::vector<EpiDiagram> out;
  for (auto& m : enumerate_epi_matchings(bottom, top)) out.push_back({bottom, top, std::move(m)});
  return out;
}

std::vector<EpiDiagram> enumerate_epi_all(const ShadedWord& bottom) {
  require_valid_word(bottom);
  if (bottom.size() > 16) fail(ErrorKind::BudgetExceeded, "epi enumeration budget exceeded");
  std::set<std::string> subs;
  int n = bottom.size();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if ((n - std::popcount(mask)) % 2 != 0) continue;
    std::string t;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) t += bottom.letters[i];
    subs.insert(t);
  }
  std::vector<EpiDiagram> out;
  for (const auto& letters : subs) {
    ShadedWord t{letters, bottom.initial};
    if (!validate_word(t)) continue;
    for (auto& m : enumerate_epi_matchings(bottom, t)) out.push_back({bottom, t, std::move(m)});
  }
  return out;
}

GradedElement phi(const GradedElement& x) {
  int s = x.side().size();
  GradedElement r(x.side());
  for (const auto& [beta, d] : x.components()) {
    int n1 = d.top().size();
    int nb = beta.size();
    for (const auto& epi : enumerate_epi_all(beta)) {
      int nt = epi.top.size();
      std::string colorsB = epi.bottom.letters + epi.top.letters;
      std::vector<std::pair<int, int>> links;
      for (int i = 0; i < nb; ++i) links.emplace_back(s + i, i);
      std::vector<int> keep;
      for (int i = 0; i < s; ++i) keep.push_back(i);
      for (int i = 0; i < nt; ++i) keep.push_back(n1 + nb + i);
      for (int i = s + nb; i < n1; ++i) keep.push_back(i);
      DiagramElement out = empty_standing(r.component_word(epi.top));
      for (const auto& [m, c] : d.combo()) {
        auto g = detail::glue(m, d.top().letters, epi.match, colorsB, links, keep);
        if (!g) fail(ErrorKind::NumericFailure, "internal: phi color mismatch");
        out.add_term(g->match, c * loop_monomial(g->loops));
      }
      r.add_component(epi.top, out);
    }
  }
  return r;
}

ScalarPoly empty_component_scalar(const GradedElement& x) {
  ShadedWord beta;
  beta.initial = x.side().initial;
  auto it = x.components().find(beta);
  if (it == x.components().end()) return ScalarPoly();
  Matching band = band_matching(x.side().size());
  auto term = it->second.combo().find(band);
  if (term == it->second.combo().end()) return ScalarPoly();
  return term->second;
}

std::vector<ScalarPoly> moments(const GradedElement& x, int N) {
  if (N < 0) fail(ErrorKind::SchemaError, "moment count must be nonnegative");
  std::vector<ScalarPoly> out;
  GradedElement acc = GradedElement::unit(x.side());
  out.push_back(graded_trace(acc));
  for (int n = 1; n <= N; ++n) {
    acc = wedge(acc, x);
    out.push_back(graded_trace(acc));
  }
  return out;
}

} // namespace freeplanar
