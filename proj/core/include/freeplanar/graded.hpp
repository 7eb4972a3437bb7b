#pragma once

#include <map>
#include <vector>

#include "freeplanar/diagram.hpp"

namespace freeplanar {

// Element of the graded algebra over a side word alpha: finitely many
// components indexed by a top word beta, each a standing element over the
// boundary word rev(alpha) + beta + alpha.
class GradedElement {
public:
  GradedElement() = default;
  explicit GradedElement(ShadedWord side) : side_(std::move(side)) {}

  static GradedElement unit(const ShadedWord& side);
  static GradedElement from_component(const ShadedWord& side, const ShadedWord& beta,
                                      const DiagramElement& standing);
  static GradedElement cup(char color);
  static GradedElement fc_double_cup();

  const ShadedWord& side() const { return side_; }
  const std::map<ShadedWord, DiagramElement>& components() const { return comps_; }
  bool is_zero() const;

  GradedElement operator+(const GradedElement& o) const;
  GradedElement operator-(const GradedElement& o) const;
  GradedElement scaled(const ScalarPoly& s) const;
  GradedElement scaled(const Rational& c) const { return scaled(ScalarPoly::constant(c)); }
  bool operator==(const GradedElement& o) const;

  // Left-right mirror; sends the beta component to the reversed-beta component.
  GradedElement adjoint() const;

  void add_component(const ShadedWord& beta, const DiagramElement& e);

  // Word used by the beta component.
  ShadedWord component_word(const ShadedWord& beta) const;

private:
  ShadedWord side_;
  std::map<ShadedWord, DiagramElement> comps_;
};

GradedElement wedge(const GradedElement& x, const GradedElement& y);
ScalarPoly graded_trace(const GradedElement& x);
GradedElement star(const GradedElement& x, const GradedElement& y);
GradedElement phi(const GradedElement& x);
// Coefficient of the empty diagram (the side band alone).
ScalarPoly empty_component_scalar(const GradedElement& x);
std::vector<ScalarPoly> moments(const GradedElement& x, int N);

// Rectangle diagram whose top points are all through-strands.
struct EpiDiagram {
  ShadedWord bottom;
  ShadedWord top;
  Matching match;
};

std::vector<EpiDiagram> enumerate_epi(const ShadedWord& bottom, const ShadedWord& top);
std::vector<EpiDiagram> enumerate_epi_all(const ShadedWord& bottom);

} // namespace freeplanar
