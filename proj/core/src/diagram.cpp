#include "freeplanar/diagram.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <optional>

#include "freeplanar/error.hpp"
#include "glue.hpp"

namespace freeplanar {

std::string shading_name(Shading s) {
  switch (s) {
    case Shading::None: return "";
    case Shading::N: return "N";
    case Shading::P: return "P";
    case Shading::M: return "M";
  }
  return "";
}

std::string ShadedWord::str() const {
  if (!npm()) return letters;
  return shading_name(initial) + "|" + letters;
}

namespace {

std::optional<Shading> shading_step(Shading s, char c) {
  if (c == 'a') {
    if (s == Shading::N) return Shading::P;
    if (s == Shading::P) return Shading::N;
    return std::nullopt;
  }
  if (c == 'b') {
    if (s == Shading::P) return Shading::M;
    if (s == Shading::M) return Shading::P;
    return std::nullopt;
  }
  return std::nullopt;
}

} // namespace

std::optional<Shading> shading_walk_end(const ShadedWord& w) {
  if (!w.npm()) return Shading::None;
  Shading s = w.initial;
  for (char c : w.letters) {
    auto next = shading_step(s, c);
    if (!next) return std::nullopt;
    s = *next;
  }
  return s;
}

bool validate_word(const ShadedWord& w) {
  for (char c : w.letters)
    if (c < 'a' || c > 'z') return false;
  if (!w.npm()) return true;
  auto end = shading_walk_end(w);
  return end && *end == w.initial;
}

void require_valid_word(const ShadedWord& w) {
  if (!validate_word(w)) fail(ErrorKind::InvalidWord, "invalid word '" + w.str() + "'");
}

ShadedWord reversed(const ShadedWord& w) {
  ShadedWord r;
  r.letters.assign(w.letters.rbegin(), w.letters.rend());
  if (w.npm()) {
    auto end = shading_walk_end(w);
    if (!end) fail(ErrorKind::InvalidWord, "invalid word '" + w.str() + "'");
    r.initial = *end;
  }
  return r;
}

ShadedWord concat(const ShadedWord& a, const ShadedWord& b) {
  ShadedWord r;
  r.letters = a.letters + b.letters;
  r.initial = a.initial;
  if (a.npm() != b.npm()) fail(ErrorKind::BoundaryMismatch, "mixed shading modes");
  if (a.npm()) {
    if (a.letters.empty()) {
      r.initial = b.initial;
      return r;
    }
    auto end = shading_walk_end(a);
    if (!end || (!b.letters.empty() && *end != b.initial))
      fail(ErrorKind::BoundaryMismatch,
           "shading mismatch concatenating '" + a.str() + "' and '" + b.str() + "'");
  }
  return r;
}

bool is_involution(const Matching& m) {
  int n = static_cast<int>(m.size());
  for (int i = 0; i < n; ++i) {
    if (m[i] < 0 || m[i] >= n || m[i] == i || m[m[i]] != i) return false;
  }
  return true;
}

std::string format_matching(const Matching& m) {
  std::string s = "[";
  bool first = true;
  for (int i = 0; i < static_cast<int>(m.size()); ++i) {
    if (m[i] <= i) continue;
    if (!first) s += ",";
    first = false;
    s += "(" + std::to_string(i) + "," + std::to_string(m[i]) + ")";
  }
  return s + "]";
}

std::string PlanarPairing::str() const { return word.str() + ":" + format_matching(match); }

namespace {

bool arcs_cross_linear(int a, int b, int c, int d) {
  // arcs (a,b), (c,d) with a<b, c<d on a line
  return (a < c && c < b && b < d) || (c < a && a < d && d < b);
}

void enumerate_linear_rec(const std::string& colors, Matching& m,
                          std::vector<std::pair<int, int>>& arcs,
                          std::vector<Matching>& out) {
  int n = static_cast<int>(colors.size());
  int first = -1;
  for (int i = 0; i < n; ++i) {
    if (m[i] < 0) {
      first = i;
      break;
    }
  }
  if (first < 0) {
    out.push_back(m);
    return;
  }
  for (int q = first + 1; q < n; ++q) {
    if (m[q] >= 0 || colors[q] != colors[first]) continue;
    bool ok = true;
    for (const auto& [a, b] : arcs) {
      if (arcs_cross_linear(a, b, first, q)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    m[first] = q;
    m[q] = first;
    arcs.emplace_back(first, q);
    enumerate_linear_rec(colors, m, arcs, out);
    arcs.pop_back();
    m[first] = -1;
    m[q] = -1;
  }
}

} // namespace

std::vector<Matching> enumerate_matchings(const std::string& colors) {
  std::vector<Matching> out;
  if (colors.size() % 2 != 0) return out;
  Matching m(colors.size(), -1);
  std::vector<std::pair<int, int>> arcs;
  enumerate_linear_rec(colors, m, arcs, out);
  return out;
}

std::vector<PlanarPairing> enumerate_pairings(const ShadedWord& w) {
  require_valid_word(w);
  std::vector<PlanarPairing> out;
  for (auto& m : enumerate_matchings(w.letters)) out.push_back({w, std::move(m)});
  return out;
}

namespace {

Int count_range(const std::string& colors, int i, int j, std::map<std::pair<int, int>, Int>& memo) {
  if (i >= j) return 1;
  if ((j - i) % 2 != 0) return 0;
  auto key = std::make_pair(i, j);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  Int total = 0;
  for (int k = i + 1; k < j; k += 2) {
    if (colors[k] != colors[i]) continue;
    total += count_range(colors, i + 1, k, memo) * count_range(colors, k + 1, j, memo);
  }
  memo[key] = total;
  return total;
}

} // namespace

Int count_pairings(const ShadedWord& w) {
  require_valid_word(w);
  std::map<std::pair<int, int>, Int> memo;
  return count_range(w.letters, 0, w.size(), memo);
}

std::map<char, int> union_cycles(const Matching& a, const Matching& b, const std::string& colors) {
  std::map<char, int> loops;
  int n = static_cast<int>(a.size());
  std::vector<bool> seen(n, false);
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    int p = start;
    bool use_a = true;
    do {
      seen[p] = true;
      p = use_a ? a[p] : b[p];
      use_a = !use_a;
      seen[p] = true;
    } while (p != start || !use_a);
    loops[colors[start]] += 1;
  }
  return loops;
}

ScalarPoly loop_monomial(const std::map<char, int>& loops) {
  ScalarPoly p = ScalarPoly::one();
  for (const auto& [c, k] : loops) p = p.shifted(c, k);
  return p;
}

namespace {

// Crossing test for two arcs in a rectangle with nb bottom points.
bool rect_cross(std::pair<int, int> u, std::pair<int, int> v, int nb) {
  auto [a, b] = u;
  auto [c, d] = v;
  bool ub = b < nb, ut = a >= nb; // u fully bottom / fully top
  bool vb = d < nb, vt = c >= nb;
  if ((ub && vb) || (ut && vt)) return arcs_cross_linear(a, b, c, d);
  if ((ub && vt) || (ut && vb)) return false;
  if (ub || ut) std::swap(u, v), std::swap(ub, vb), std::swap(ut, vt);
  // now u is a through arc (u.first bottom, u.second top)
  if (vb) return v.first < u.first && u.first < v.second;
  if (vt) return v.first < u.second && u.second < v.second;
  // both through
  return (u.first < v.first) != (u.second < v.second);
}

void enumerate_rect_rec(const std::string& colors, int nb, Matching& m,
                        std::vector<std::pair<int, int>>& arcs, std::vector<Matching>& out,
                        const std::function<bool(const std::pair<int, int>&)>& arc_filter) {
  int n = static_cast<int>(colors.size());
  int first = -1;
  for (int i = 0; i < n; ++i) {
    if (m[i] < 0) {
      first = i;
      break;
    }
  }
  if (first < 0) {
    out.push_back(m);
    return;
  }
  for (int q = first + 1; q < n; ++q) {
    if (m[q] >= 0 || colors[q] != colors[first]) continue;
    std::pair<int, int> cand{first, q};
    if (arc_filter && !arc_filter(cand)) continue;
    bool ok = true;
    for (const auto& arc : arcs) {
      if (rect_cross(arc, cand, nb)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    m[first] = q;
    m[q] = first;
    arcs.push_back(cand);
    enumerate_rect_rec(colors, nb, m, arcs, out, arc_filter);
    arcs.pop_back();
    m[first] = -1;
    m[q] = -1;
  }
}

bool box_words_compatible(const ShadedWord& bottom, const ShadedWord& top) {
  if (bottom.npm() != top.npm()) return false;
  if (!bottom.npm()) return true;
  if (bottom.letters.empty() || top.letters.empty()) return true;
  auto eb = shading_walk_end(bottom), et = shading_walk_end(top);
  return bottom.initial == top.initial && eb && et && *eb == *et;
}

} // namespace

bool rect_planar(const Matching& m, int bottom_size) {
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < static_cast<int>(m.size()); ++i)
    if (m[i] > i) arcs.emplace_back(i, m[i]);
  for (size_t i = 0; i < arcs.size(); ++i)
    for (size_t j = i + 1; j < arcs.size(); ++j)
      if (rect_cross(arcs[i], arcs[j], bottom_size)) return false;
  return true;
}

std::vector<Matching> enumerate_rect_matchings(const ShadedWord& bottom, const ShadedWord& top) {
  require_valid_word(bottom);
  require_valid_word(top);
  if (!box_words_compatible(bottom, top)) return {};
  std::string colors = bottom.letters + top.letters;
  std::vector<Matching> out;
  if (colors.size() % 2 != 0) return out;
  Matching m(colors.size(), -1);
  std::vector<std::pair<int, int>> arcs;
  enumerate_rect_rec(colors, bottom.size(), m, arcs, out, nullptr);
  return out;
}

std::vector<Matching> enumerate_epi_matchings(const ShadedWord& bottom, const ShadedWord& top) {
  require_valid_word(bottom);
  require_valid_word(top);
  if (!box_words_compatible(bottom, top)) return {};
  std::string colors = bottom.letters + top.letters;
  std::vector<Matching> out;
  if (colors.size() % 2 != 0) return out;
  Matching m(colors.size(), -1);
  std::vector<std::pair<int, int>> arcs;
  int nb = bottom.size();
  auto no_top_arcs = [nb](const std::pair<int, int>& arc) { return arc.first < nb; };
  enumerate_rect_rec(colors, nb, m, arcs, out, no_top_arcs);
  return out;
}

DiagramElement::DiagramElement(ShadedWord bottom, ShadedWord top)
    : bottom_(std::move(bottom)), top_(std::move(top)) {
  require_valid_word(bottom_);
  require_valid_word(top_);
  if (!box_words_compatible(bottom_, top_))
    fail(ErrorKind::InvalidWord,
         "incompatible box words '" + bottom_.str() + "' -> '" + top_.str() + "'");
}

void DiagramElement::add_term(const Matching& m, const ScalarPoly& coeff) {
  if (coeff.is_zero()) return;
  auto it = combo_.find(m);
  if (it == combo_.end()) {
    combo_.emplace(m, coeff);
  } else {
    it->second = it->second + coeff;
    if (it->second.is_zero()) combo_.erase(it);
  }
}

DiagramElement DiagramElement::basis(const ShadedWord& bottom, const ShadedWord& top,
                                     const Matching& m) {
  DiagramElement e(bottom, top);
  if (static_cast<int>(m.size()) != bottom.size() + top.size() || !is_involution(m))
    fail(ErrorKind::InvalidWord, "matching is not an involution on the boundary");
  std::string colors = bottom.letters + top.letters;
  for (int i = 0; i < static_cast<int>(m.size()); ++i)
    if (colors[i] != colors[m[i]])
      fail(ErrorKind::InvalidWord, "color-mismatched arc in " + format_matching(m));
  if (!rect_planar(m, bottom.size()))
    fail(ErrorKind::InvalidWord, "crossing arcs in " + format_matching(m));
  e.add_term(m, ScalarPoly::one());
  return e;
}

DiagramElement DiagramElement::standing(const ShadedWord& word, const Matching& m) {
  ShadedWord empty;
  empty.initial = word.npm() ? word.initial : Shading::None;
  return basis(empty, word, m);
}

DiagramElement DiagramElement::identity(const ShadedWord& word) {
  DiagramElement e(word, word);
  int n = word.size();
  Matching m(2 * n);
  for (int i = 0; i < n; ++i) {
    m[i] = n + i;
    m[n + i] = i;
  }
  if (n > 0) e.add_term(m, ScalarPoly::one());
  else e.add_term({}, ScalarPoly::one());
  return e;
}

DiagramElement DiagramElement::tl_generator(const ShadedWord& word, int i) {
  int n = word.size();
  if (i < 0 || i + 1 >= n) fail(ErrorKind::InvalidWord, "generator index out of range");
  if (word.letters[i] != word.letters[i + 1])
    fail(ErrorKind::InvalidWord, "generator strands must share a color");
  Matching m(2 * n);
  for (int k = 0; k < n; ++k) {
    m[k] = n + k;
    m[n + k] = k;
  }
  m[i] = i + 1;
  m[i + 1] = i;
  m[n + i] = n + i + 1;
  m[n + i + 1] = n + i;
  return basis(word, word, m);
}

DiagramElement DiagramElement::operator+(const DiagramElement& o) const {
  if (bottom_ != o.bottom_ || top_ != o.top_)
    fail(ErrorKind::BoundaryMismatch, "sum of elements over different boundaries");
  DiagramElement r = *this;
  for (const auto& [m, c] : o.combo_) r.add_term(m, c);
  return r;
}

DiagramElement DiagramElement::operator-(const DiagramElement& o) const {
  return *this + o.scaled(Rational(-1));
}

DiagramElement DiagramElement::scaled(const ScalarPoly& s) const {
  DiagramElement r(bottom_, top_);
  for (const auto& [m, c] : combo_) r.add_term(m, c * s);
  return r;
}

bool DiagramElement::operator==(const DiagramElement& o) const {
  return bottom_ == o.bottom_ && top_ == o.top_ && combo_ == o.combo_;
}

DiagramElement DiagramElement::adjoint() const {
  DiagramElement r(top_, bottom_);
  int nb = bottom_.size(), nt = top_.size();
  auto flip = [&](int i) { return i < nb ? nt + i : i - nb; };
  for (const auto& [m, c] : combo_) {
    Matching fm(m.size());
    for (int i = 0; i < static_cast<int>(m.size()); ++i) fm[flip(i)] = flip(m[i]);
    r.add_term(fm, c);
  }
  return r;
}

DiagramElement stack_multiply(const DiagramElement& x, const DiagramElement& y) {
  if (x.top() != y.bottom())
    fail(ErrorKind::BoundaryMismatch,
         "cannot glue top '" + x.top().str() + "' to bottom '" + y.bottom().str() + "'");
  int mx = x.bottom().size(), k = x.top().size(), ny = y.top().size();
  int na = mx + k;
  std::string colorsA = x.bottom().letters + x.top().letters;
  std::string colorsB = y.bottom().letters + y.top().letters;
  std::vector<std::pair<int, int>> links;
  for (int i = 0; i < k; ++i) links.emplace_back(mx + i, i);
  std::vector<int> keep;
  for (int i = 0; i < mx; ++i) keep.push_back(i);
  for (int i = 0; i < ny; ++i) keep.push_back(na + k + i);

  DiagramElement r(x.bottom(), y.top());
  for (const auto& [ma, ca] : x.combo()) {
    for (const auto& [mb, cb] : y.combo()) {
      auto g = detail::glue(ma, colorsA, mb, colorsB, links, keep);
      r.add_term(g->match, ca * cb * loop_monomial(g->loops));
    }
  }
  return r;
}

DiagramElement tensor(const DiagramElement& x, const DiagramElement& y) {
  ShadedWord bottom = concat(x.bottom(), y.bottom());
  ShadedWord top = concat(x.top(), y.top());
  int bx = x.bottom().size(), tx = x.top().size();
  int by = y.bottom().size(), ty = y.top().size();
  auto mapx = [&](int i) { return i < bx ? i : (bx + by) + (i - bx); };
  auto mapy = [&](int i) { return i < by ? bx + i : (bx + by + tx) + (i - by); };
  DiagramElement r(bottom, top);
  for (const auto& [ma, ca] : x.combo()) {
    for (const auto& [mb, cb] : y.combo()) {
      Matching m(bottom.size() + top.size(), -1);
      for (int i = 0; i < static_cast<int>(ma.size()); ++i) m[mapx(i)] = mapx(ma[i]);
      for (int i = 0; i < static_cast<int>(mb.size()); ++i) m[mapy(i)] = mapy(mb[i]);
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

ScalarPoly close_trace(const DiagramElement& x) {
  if (x.bottom() != x.top())
    fail(ErrorKind::BoundaryMismatch, "trace requires equal bottom and top words");
  int n = x.bottom().size();
  std::string colors = x.bottom().letters + x.top().letters;
  Matching closure(2 * n);
  for (int i = 0; i < n; ++i) {
    closure[i] = n + i;
    closure[n + i] = i;
  }
  ScalarPoly total;
  for (const auto& [m, c] : x.combo()) {
    if (n == 0) {
      total = total + c;
      continue;
    }
    total = total + c * loop_monomial(union_cycles(m, closure, colors));
  }
  return total;
}

ScalarPoly close_trace_left(const DiagramElement& x) {
  if (x.bottom() != x.top())
    fail(ErrorKind::BoundaryMismatch, "trace requires equal bottom and top words");
  int n = x.bottom().size();
  if (n == 0) {
    ScalarPoly total;
    for (const auto& [m, c] : x.combo()) total = total + c;
    return total;
  }
  ShadedWord rev = reversed(x.bottom());
  ShadedWord band = concat(rev, x.bottom());
  Matching nested(2 * n);
  for (int i = 0; i < n; ++i) {
    nested[i] = 2 * n - 1 - i;
    nested[2 * n - 1 - i] = i;
  }
  DiagramElement cups = DiagramElement::standing(band, nested);
  DiagramElement middle = tensor(DiagramElement::identity(rev), x);
  DiagramElement closed = stack_multiply(stack_multiply(cups, middle), cups.adjoint());
  ScalarPoly total;
  for (const auto& [m, c] : closed.combo()) total = total + c;
  return total;
}

std::vector<std::vector<ScalarPoly>> gram_matrix(const ShadedWord& w) {
  require_valid_word(w);
  auto diagrams = enumerate_matchings(w.letters);
  size_t n = diagrams.size();
  std::vector<std::vector<ScalarPoly>> g(n, std::vector<ScalarPoly>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      g[i][j] = loop_monomial(union_cycles(diagrams[i], diagrams[j], w.letters));
  return g;
}

std::pair<bool, double> psd_check(const ShadedWord& w, const std::map<char, double>& delta,
                                  double tol) {
  for (const auto& [c, v] : delta)
    if (v <= 0) fail(ErrorKind::SchemaError, std::string("loop parameter for ") + c + " must be positive");
  auto g = gram_matrix(w);
  size_t n = g.size();
  if (n == 0) return {true, 0.0};
  Eigen::MatrixXd m(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m(i, j) = g[i][j].eval(delta);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::NumericFailure, "eigenvalue iteration did not converge");
  double min_eig = solver.eigenvalues().minCoeff();
  return {min_eig >= -tol, min_eig};
}

double chebyshev_quantum_integer(int k, double delta) {
  // [0]=0, [1]=1, [k+1] = delta*[k] - [k-1]
  if (k == 0) return 0.0;
  double prev = 0.0, cur = 1.0;
  for (int i = 1; i < k; ++i) {
    double next = delta * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

NumElement num_identity(int n, char color) {
  NumElement e;
  e.strands = n;
  e.color = color;
  Matching m(2 * n);
  for (int i = 0; i < n; ++i) {
    m[i] = n + i;
    m[n + i] = i;
  }
  e.combo[m] = 1.0;
  return e;
}

NumElement num_tl_generator(int n, char color, int i) {
  NumElement e = num_identity(n, color);
  Matching m = e.combo.begin()->first;
  e.combo.clear();
  m[i] = i + 1;
  m[i + 1] = i;
  m[n + i] = n + i + 1;
  m[n + i + 1] = n + i;
  e.combo[m] = 1.0;
  return e;
}

NumElement num_compose(const NumElement& x, const NumElement& y, double delta) {
  if (x.strands != y.strands || x.color != y.color)
    fail(ErrorKind::BoundaryMismatch, "numeric elements over different boundaries");
  int n = x.strands;
  std::string colors(2 * n, x.color);
  std::vector<std::pair<int, int>> links;
  for (int i = 0; i < n; ++i) links.emplace_back(n + i, i);
  std::vector<int> keep;
  for (int i = 0; i < n; ++i) keep.push_back(i);
  for (int i = 0; i < n; ++i) keep.push_back(2 * n + n + i);
  NumElement r;
  r.strands = n;
  r.color = x.color;
  for (const auto& [ma, ca] : x.combo) {
    for (const auto& [mb, cb] : y.combo) {
      auto g = detail::glue(ma, colors, mb, colors, links, keep);
      int loops = g->loops.empty() ? 0 : g->loops.begin()->second;
      double coeff = ca * cb * std::pow(delta, loops);
      r.combo[g->match] += coeff;
    }
  }
  for (auto it = r.combo.begin(); it != r.combo.end();) {
    if (it->second == 0.0) it = r.combo.erase(it);
    else ++it;
  }
  return r;
}

double num_close_trace(const NumElement& x, double delta) {
  int n = x.strands;
  std::string colors(2 * n, x.color);
  Matching closure(2 * n);
  for (int i = 0; i < n; ++i) {
    closure[i] = n + i;
    closure[n + i] = i;
  }
  double total = 0.0;
  for (const auto& [m, c] : x.combo) {
    auto loops = union_cycles(m, closure, colors);
    int k = loops.empty() ? 0 : loops.begin()->second;
    total += c * std::pow(delta, k);
  }
  return total;
}

namespace {

NumElement num_tensor_strand(const NumElement& x) {
  int n = x.strands;
  NumElement r;
  r.strands = n + 1;
  r.color = x.color;
  auto remap = [&](int i) { return i < n ? i : i + 1; };
  for (const auto& [m, c] : x.combo) {
    Matching nm(2 * n + 2, -1);
    for (int i = 0; i < 2 * n; ++i) nm[remap(i)] = remap(m[i]);
    nm[n] = 2 * n + 1;
    nm[2 * n + 1] = n;
    r.combo[nm] = c;
  }
  return r;
}

} // namespace

NumElement jones_wenzl(int n, char color, double delta) {
  if (n < 1) fail(ErrorKind::InvalidWord, "jones_wenzl needs n >= 1");
  NumElement f = num_identity(1, color);
  for (int k = 1; k < n; ++k) {
    double qk = chebyshev_quantum_integer(k, delta);
    double qk1 = chebyshev_quantum_integer(k + 1, delta);
    if (std::abs(qk1) < 1e-9)
      fail(ErrorKind::DegenerateDelta,
           "quantum integer [" + std::to_string(k + 1) + "] vanishes at delta");
    NumElement fx = num_tensor_strand(f);
    NumElement ek = num_tl_generator(k + 1, color, k - 1);
    NumElement prod = num_compose(num_compose(fx, ek, delta), fx, delta);
    NumElement next = fx;
    double scale = qk / qk1;
    for (const auto& [m, c] : prod.combo) next.combo[m] -= scale * c;
    for (auto it = next.combo.begin(); it != next.combo.end();) {
      if (std::abs(it->second) < 1e-15) it = next.combo.erase(it);
      else ++it;
    }
    f = next;
  }
  return f;
}

namespace {

struct InsertionPlan {
  std::vector<std::pair<int, int>> arcs; // target positions
  std::vector<int> source_to_target;
};

bool block_reducible(const std::string& colors, int i, int j,
                     std::map<std::pair<int, int>, Int>& memo) {
  return count_range(colors, i, j, memo) > 0;
}

std::optional<InsertionPlan> canonical_insertion(const std::string& source,
                                                 const std::string& target) {
  int ns = static_cast<int>(source.size()), nt = static_cast<int>(target.size());
  if ((nt - ns) % 2 != 0 || nt < ns) return std::nullopt;
  std::map<std::pair<int, int>, Int> memo;
  std::map<std::pair<int, int>, int> feasible; // -1 unknown cache via map presence
  std::function<bool(int, int)> ok = [&](int i, int j) -> bool {
    if (j == nt) return i == ns;
    auto key = std::make_pair(i, j);
    auto it = feasible.find(key);
    if (it != feasible.end()) return it->second != 0;
    bool res = false;
    if (i < ns && source[i] == target[j] && ok(i + 1, j + 1)) res = true;
    if (!res) {
      for (int L = 2; j + L <= nt; L += 2) {
        if (block_reducible(target, j, j + L, memo) && ok(i, j + L)) {
          res = true;
          break;
        }
      }
    }
    feasible[key] = res ? 1 : 0;
    return res;
  };
  if (!ok(0, 0)) return std::nullopt;
  InsertionPlan plan;
  int i = 0, j = 0;
  while (j < nt) {
    if (i < ns && source[i] == target[j] && ok(i + 1, j + 1)) {
      plan.source_to_target.push_back(j);
      ++i;
      ++j;
      continue;
    }
    for (int L = 2;; L += 2) {
      if (j + L > nt) fail(ErrorKind::NumericFailure, "insertion reconstruction failed");
      if (!block_reducible(target, j, j + L, memo) || !ok(i, j + L)) continue;
      auto block = enumerate_matchings(target.substr(j, L));
      for (int p = 0; p < L; ++p)
        if (block.front()[p] > p) plan.arcs.emplace_back(j + p, j + block.front()[p]);
      j += L;
      break;
    }
  }
  return plan;
}

std::optional<InsertionPlan> plan_from_arcs(const std::string& source, const std::string& target,
                                            std::vector<std::pair<int, int>> arcs) {
  int nt = static_cast<int>(target.size());
  std::vector<bool> inserted(nt, false);
  for (auto& [u, v] : arcs) {
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= nt || u == v) return std::nullopt;
    if (inserted[u] || inserted[v]) return std::nullopt;
    if (target[u] != target[v]) return std::nullopt;
    inserted[u] = inserted[v] = true;
  }
  // each arc interior must consist of inserted points; arcs must not cross
  for (const auto& [u, v] : arcs) {
    for (int p = u + 1; p < v; ++p)
      if (!inserted[p]) return std::nullopt;
    for (const auto& [c, d] : arcs)
      if (arcs_cross_linear(u, v, c, d)) return std::nullopt;
  }
  InsertionPlan plan;
  plan.arcs = arcs;
  std::string rest;
  for (int p = 0; p < nt; ++p) {
    if (!inserted[p]) {
      rest += target[p];
      plan.source_to_target.push_back(p);
    }
  }
  if (rest != source) return std::nullopt;
  return plan;
}

} // namespace

DiagramElement embed_with_cups(const DiagramElement& x, const ShadedWord& target) {
  require_valid_word(target);
  auto plan = canonical_insertion(x.top().letters, target.letters);
  if (!plan)
    fail(ErrorKind::NotAnInsertion,
         "'" + target.str() + "' is not a cup-insertion extension of '" + x.top().str() + "'");
  return embed_with_cups(x, target, plan->arcs);
}

DiagramElement embed_with_cups(const DiagramElement& x, const ShadedWord& target,
                               const std::vector<std::pair<int, int>>& arcs) {
  require_valid_word(target);
  bool standing = x.bottom().size() == 0;
  bool endo = x.bottom() == x.top();
  if (!standing && !endo)
    fail(ErrorKind::NotAnInsertion, "embedding requires a standing or endomorphism element");
  if (target.npm() != x.top().npm())
    fail(ErrorKind::NotAnInsertion, "shading mode mismatch");
  auto plan = plan_from_arcs(x.top().letters, target.letters, arcs);
  if (!plan)
    fail(ErrorKind::NotAnInsertion,
         "'" + target.str() + "' is not a cup-insertion extension of '" + x.top().str() + "'");

  ScalarPoly scale = ScalarPoly::one();
  for (const auto& [u, v] : plan->arcs) scale = scale.shifted(target.letters[u], -1);

  int nt = target.size();
  ShadedWord new_bottom = standing ? x.bottom() : target;
  DiagramElement r(new_bottom, target);
  int bottom_off = standing ? 0 : nt;
  auto map_top = [&](int i) { return bottom_off + plan->source_to_target[i]; };
  auto map_bottom = [&](int i) { return standing ? i : plan->source_to_target[i]; };
  int old_nb = x.bottom().size();

  for (const auto& [m, c] : x.combo()) {
    Matching nm(new_bottom.size() + nt, -1);
    auto remap = [&](int i) { return i < old_nb ? map_bottom(i) : map_top(i - old_nb); };
    for (int i = 0; i < static_cast<int>(m.size()); ++i) nm[remap(i)] = remap(m[i]);
    for (const auto& [u, v] : plan->arcs) {
      nm[bottom_off + u] = bottom_off + v;
      nm[bottom_off + v] = bottom_off + u;
      if (!standing) {
        nm[u] = v;
        nm[v] = u;
      }
    }
    r.add_term(nm, c * scale);
  }
  return r;
}

PlanarPairing parse_diagram_literal(const std::string& text) {
  std::string body = text;
  ShadedWord w;
  auto bar = body.find('|');
  if (bar != std::string::npos) {
    std::string prefix = body.substr(0, bar);
    if (prefix == "N") w.initial = Shading::N;
    else if (prefix == "P") w.initial = Shading::P;
    else if (prefix == "M") w.initial = Shading::M;
    else fail(ErrorKind::SchemaError, "unknown shading prefix '" + prefix + "'");
    body = body.substr(bar + 1);
  }
  auto colon = body.find(':');
  if (colon == std::string::npos) fail(ErrorKind::SchemaError, "diagram literal needs ':'");
  w.letters = body.substr(0, colon);
  std::string rest = body.substr(colon + 1);
  Matching m(w.size(), -1);
  size_t pos = 0;
  auto expect = [&](char c) {
    if (pos >= rest.size() || rest[pos] != c)
      fail(ErrorKind::SchemaError, "malformed pair list '" + rest + "'");
    ++pos;
  };
  auto read_int = [&]() {
    size_t start = pos;
    while (pos < rest.size() && isdigit(rest[pos])) ++pos;
    if (start == pos) fail(ErrorKind::SchemaError, "malformed pair list '" + rest + "'");
    return std::stoi(rest.substr(start, pos - start));
  };
  expect('[');
  if (pos < rest.size() && rest[pos] == ']') {
    ++pos;
  } else {
    while (true) {
      expect('(');
      int i = read_int();
      expect(',');
      int j = read_int();
      expect(')');
      if (i < 0 || j < 0 || i >= w.size() || j >= w.size() || i == j || m[i] >= 0 || m[j] >= 0)
        fail(ErrorKind::SchemaError, "bad pair in '" + rest + "'");
      m[i] = j;
      m[j] = i;
      if (pos < rest.size() && rest[pos] == ',') {
        ++pos;
        continue;
      }
      expect(']');
      break;
    }
  }
  require_valid_word(w);
  for (int i = 0; i < w.size(); ++i)
    if (m[i] < 0) fail(ErrorKind::SchemaError, "matching leaves point " + std::to_string(i) + " free");
  DiagramElement::standing(w, m); // validates colors and planarity
  return {w, m};
}

} // namespace freeplanar
