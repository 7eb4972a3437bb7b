#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freeplanar/rational.hpp"
#include "freeplanar/scalar_poly.hpp"

namespace freeplanar {

enum class Shading { None, N, P, M };

std::string shading_name(Shading s);

// Boundary word: a string of color letters, optionally with an initial shading
// for the N-P-M walk (a toggles N<->P, b toggles P<->M).
struct ShadedWord {
  std::string letters;
  Shading initial = Shading::None;

  bool npm() const { return initial != Shading::None; }
  int size() const { return static_cast<int>(letters.size()); }
  bool operator==(const ShadedWord& o) const {
    return letters == o.letters && initial == o.initial;
  }
  bool operator!=(const ShadedWord& o) const { return !(*this == o); }
  bool operator<(const ShadedWord& o) const {
    if (letters != o.letters) return letters < o.letters;
    return initial < o.initial;
  }
  std::string str() const;
};

bool validate_word(const ShadedWord& w);
void require_valid_word(const ShadedWord& w);
// Shading after walking the whole word from its initial shading.
std::optional<Shading> shading_walk_end(const ShadedWord& w);
ShadedWord reversed(const ShadedWord& w);
ShadedWord concat(const ShadedWord& a, const ShadedWord& b);

// Fixed-point-free involution on 0..n-1; m[i] = partner of i.
using Matching = std::vector<int>;

std::string format_matching(const Matching& m);
bool is_involution(const Matching& m);

struct PlanarPairing {
  ShadedWord word;
  Matching match;
  std::string str() const;
};

// All color-matched non-crossing perfect matchings of a linear word,
// lexicographic on the involution arrays.
std::vector<Matching> enumerate_matchings(const std::string& colors);
std::vector<PlanarPairing> enumerate_pairings(const ShadedWord& w);
Int count_pairings(const ShadedWord& w);

// Cycle count per color of the union of two perfect matchings on one point set.
std::map<char, int> union_cycles(const Matching& a, const Matching& b, const std::string& colors);
ScalarPoly loop_monomial(const std::map<char, int>& loops);

// Rectangle diagram space: bottom word alpha, top word beta. Boundary points
// are numbered bottom left-to-right then top left-to-right; a matching on
// those points is planar when no two arcs cross in the rectangle.
bool rect_planar(const Matching& m, int bottom_size);
std::vector<Matching> enumerate_rect_matchings(const ShadedWord& bottom, const ShadedWord& top);
// Rectangle matchings without top-to-top arcs (every top point is through).
std::vector<Matching> enumerate_epi_matchings(const ShadedWord& bottom, const ShadedWord& top);

class DiagramElement {
public:
  DiagramElement() = default;
  DiagramElement(ShadedWord bottom, ShadedWord top);

  static DiagramElement basis(const ShadedWord& bottom, const ShadedWord& top, const Matching& m);
  static DiagramElement standing(const ShadedWord& word, const Matching& m);
  static DiagramElement identity(const ShadedWord& word);
  // TL generator on word: cup joining bottom i,i+1 and cap joining top i,i+1.
  static DiagramElement tl_generator(const ShadedWord& word, int i);

  const ShadedWord& bottom() const { return bottom_; }
  const ShadedWord& top() const { return top_; }
  const std::map<Matching, ScalarPoly>& combo() const { return combo_; }
  bool is_zero() const { return combo_.empty(); }

  DiagramElement operator+(const DiagramElement& o) const;
  DiagramElement operator-(const DiagramElement& o) const;
  DiagramElement scaled(const ScalarPoly& s) const;
  DiagramElement scaled(const Rational& c) const { return scaled(ScalarPoly::constant(c)); }
  bool operator==(const DiagramElement& o) const;

  // Reflection across the horizontal axis; swaps bottom and top.
  DiagramElement adjoint() const;

  void add_term(const Matching& m, const ScalarPoly& coeff);

private:
  ShadedWord bottom_, top_;
  std::map<Matching, ScalarPoly> combo_;
};

// Vertical composition: glues x's top boundary to y's bottom boundary
// (x drawn below y); closed loops of color c become factors of d_c.
DiagramElement stack_multiply(const DiagramElement& x, const DiagramElement& y);
// Horizontal juxtaposition.
DiagramElement tensor(const DiagramElement& x, const DiagramElement& y);

// Markov trace by right-nested closure arcs joining bottom i to top i.
ScalarPoly close_trace(const DiagramElement& x);
// Same quantity routed through explicit cup/cap elements around the left.
ScalarPoly close_trace_left(const DiagramElement& x);

std::vector<std::vector<ScalarPoly>> gram_matrix(const ShadedWord& w);
std::pair<bool, double> psd_check(const ShadedWord& w, const std::map<char, double>& delta,
                                  double tol = 1e-10);

// Numeric-coefficient element for the Jones-Wenzl recursion.
struct NumElement {
  int strands = 0;
  char color = 'c';
  std::map<Matching, double> combo;
};

NumElement jones_wenzl(int n, char color, double delta);
NumElement num_identity(int n, char color);
NumElement num_tl_generator(int n, char color, int i);
NumElement num_compose(const NumElement& x, const NumElement& y, double delta);
double num_close_trace(const NumElement& x, double delta);
double chebyshev_quantum_integer(int k, double delta);

// Cup-insertion embedding. Arcs lists the inserted pairs as positions in the
// target word; when omitted the canonical (leftmost) insertion parse is used.
DiagramElement embed_with_cups(const DiagramElement& x, const ShadedWord& target);
DiagramElement embed_with_cups(const DiagramElement& x, const ShadedWord& target,
                               const std::vector<std::pair<int, int>>& arcs);

// Literal syntax: [P|]word:[(i,j),(k,l)].
PlanarPairing parse_diagram_literal(const std::string& text);

} // namespace freeplanar
