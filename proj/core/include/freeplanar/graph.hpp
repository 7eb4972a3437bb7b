#pragma once

#include <functional>
#include <string>
#include <vector>

#include "freeplanar/factor.hpp"

namespace freeplanar {

// Undirected edge with multiplicity; u == v is a loop. color is 0 for plain
// graphs, 'a' or 'b' in tri-partite mode.
struct GraphEdge {
  int u = 0;
  int v = 0;
  int multiplicity = 1;
  char color = 0;
};

template <class S>
struct WeightedGraph {
  std::vector<std::string> ids;
  std::vector<S> weights;
  std::vector<GraphEdge> edges;
  int marked = 0;

  int size() const { return static_cast<int>(ids.size()); }

  int add_vertex(std::string id, S weight) {
    ids.push_back(std::move(id));
    weights.push_back(std::move(weight));
    return size() - 1;
  }

  void add_edge(int u, int v, int multiplicity = 1, char color = 0) {
    edges.push_back({u, v, multiplicity, color});
  }

  int index_of(const std::string& id) const {
    for (int i = 0; i < size(); ++i)
      if (ids[i] == id) return i;
    fail(ErrorKind::SchemaError, "unknown vertex id '" + id + "'");
  }

  int edge_total() const {
    int e = 0;
    for (const auto& ed : edges) e += ed.multiplicity;
    return e;
  }
};

template <class S>
void validate_graph(const WeightedGraph<S>& g) {
  using T = NumTraits<S>;
  int n = g.size();
  if (n == 0) fail(ErrorKind::WeightInvalid, "graph has no vertices");
  for (const auto& w : g.weights)
    if (!T::definitely_positive(w)) fail(ErrorKind::WeightInvalid, "vertex weights must be positive");
  if (g.marked < 0 || g.marked >= n) fail(ErrorKind::SchemaError, "marked vertex out of range");
  for (const auto& e : g.edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      fail(ErrorKind::SchemaError, "edge endpoint out of range");
    if (e.multiplicity < 1) fail(ErrorKind::SchemaError, "edge multiplicity must be positive");
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{g.marked};
  seen[g.marked] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& e : g.edges) {
      int other = -1;
      if (e.u == v) other = e.v;
      else if (e.v == v) other = e.u;
      if (other >= 0 && !seen[other]) {
        seen[other] = 1;
        stack.push_back(other);
      }
    }
  }
  for (int v = 0; v < n; ++v)
    if (!seen[v]) fail(ErrorKind::Disconnected, "graph is not connected");
}

template <class S>
struct GraphReport {
  WeightedGraph<S> graph;            // weights normalized to total 1
  std::vector<S> alpha;              // per-vertex neighbour mass (loops add own weight)
  std::vector<int> atom_vertices;    // B(Gamma)
  std::vector<S> atom_traces;
  FactorDecomposition<S> decomposition;
  bool has_factor = false;
  Ext<S> t{};
  S factor_trace{};
  Ext<S> fdim_additive{};
  Ext<S> fdim_formula{};
  bool single_edge = false;
};

// Decomposition of the graph algebra over normalized weights: atoms at
// vertices whose weight exceeds the neighbour mass, a free-group remainder
// whose parameter is fixed by the free dimension. fdim is computed two ways:
// edge additivity, and the closed form 1 - sum gamma^2 + sum n gamma gamma'.
template <class S>
GraphReport<S> analyze_graph(const WeightedGraph<S>& g) {
  using T = NumTraits<S>;
  validate_graph(g);
  const S one = T::from_int(1);
  const S zero = T::from_int(0);
  int n = g.size();
  int etotal = g.edge_total();
  if (etotal == 0) fail(ErrorKind::TooFewEdges, "analysis requires at least one edge");

  GraphReport<S> r;
  r.graph = g;
  S total = zero;
  for (const auto& w : g.weights) total = total + w;
  for (auto& w : r.graph.weights) w = w / total;
  const auto& wt = r.graph.weights;

  r.alpha.assign(n, zero);
  for (const auto& e : g.edges) {
    S m = T::from_int(e.multiplicity);
    if (e.u == e.v) {
      r.alpha[e.u] = r.alpha[e.u] + m * wt[e.u];
    } else {
      r.alpha[e.u] = r.alpha[e.u] + m * wt[e.v];
      r.alpha[e.v] = r.alpha[e.v] + m * wt[e.u];
    }
  }

  S sumsq = zero;
  for (const auto& w : wt) sumsq = sumsq + w * w;
  S vertex_fdim = one - sumsq;

  S additive = zero;
  S pairsum = zero;
  for (const auto& e : g.edges) {
    S m = T::from_int(e.multiplicity);
    if (e.u == e.v) {
      additive = additive + m * (one - (sumsq - wt[e.u] * wt[e.u]));
      pairsum = pairsum + m * wt[e.u] * wt[e.u];
    } else {
      S gap = wt[e.u] - wt[e.v];
      additive = additive + m * (one - gap * gap - (sumsq - wt[e.u] * wt[e.u] - wt[e.v] * wt[e.v]));
      pairsum = pairsum + m * (wt[e.u] * wt[e.v] + wt[e.v] * wt[e.u]);
    }
  }
  additive = additive - T::from_int(etotal - 1) * vertex_fdim;
  S formula = one - sumsq + pairsum;
  if (!T::close(additive, formula, 1e-12))
    fail(ErrorKind::NumericFailure, "free-dimension routes disagree");
  r.fdim_additive = Ext<S>::finite(additive);
  r.fdim_formula = Ext<S>::finite(formula);

  S atom_total = zero;
  S atom_sq = zero;
  for (int v = 0; v < n; ++v) {
    S a = wt[v] - r.alpha[v];
    if (!T::definitely_positive(a)) continue;
    r.atom_vertices.push_back(v);
    r.atom_traces.push_back(a);
    atom_total = atom_total + a;
    atom_sq = atom_sq + a * a;
  }
  r.factor_trace = one - atom_total;
  if (!T::definitely_positive(r.factor_trace))
    fail(ErrorKind::NumericFailure, "atoms exhaust the trace");

  if (etotal == 1) {
    r.single_edge = true;
    const auto& e = g.edges.front();
    if (e.u == e.v) {
      r.decomposition.summands.push_back(diffuse_summand(wt[e.u]));
      for (int v = 0; v < n; ++v)
        if (v != e.u) r.decomposition.summands.push_back(atom_summand(wt[v]));
    } else {
      S lo = wt[e.u] < wt[e.v] ? wt[e.u] : wt[e.v];
      r.decomposition.summands.push_back(diffuse_summand(S(lo + lo)));
      S gap = T::abs(wt[e.u] - wt[e.v]);
      if (T::definitely_positive(gap)) r.decomposition.summands.push_back(atom_summand(gap));
      for (int v = 0; v < n; ++v)
        if (v != e.u && v != e.v) r.decomposition.summands.push_back(atom_summand(wt[v]));
    }
    return r;
  }

  r.has_factor = true;
  r.t = Ext<S>::finite(one + (additive - one + atom_sq) / (r.factor_trace * r.factor_trace));
  r.decomposition.summands.push_back(free_group_summand(r.t, r.factor_trace));
  for (const auto& a : r.atom_traces) r.decomposition.summands.push_back(atom_summand(a));
  return r;
}

// Parameter of the factor part compressed by the projection at v. A vertex
// carrying an atom keeps only the neighbour-mass share of its trace.
template <class S>
Ext<S> cutdown(const GraphReport<S>& r, int v) {
  if (v < 0 || v >= r.graph.size()) fail(ErrorKind::SchemaError, "vertex out of range");
  if (!r.has_factor) fail(ErrorKind::ShapeUnsupported, "report carries no factor summand");
  S eff = r.graph.weights[v];
  for (size_t i = 0; i < r.atom_vertices.size(); ++i)
    if (r.atom_vertices[i] == v) eff = r.alpha[v];
  return amplify(r.t, eff / r.factor_trace);
}

struct PerronFrobenius {
  double lambda = 0;
  std::vector<double> weights;
};

PerronFrobenius perron_frobenius(const WeightedGraph<double>& g);

template <class S>
S gjs_formula(const S& delta, const S& index, int k) {
  using T = NumTraits<S>;
  if (k < 0) fail(ErrorKind::SchemaError, "k must be nonnegative");
  const S one = T::from_int(1);
  if (!T::definitely_positive(delta - one))
    fail(ErrorKind::InvalidWeights, "delta must exceed 1");
  S scale = one + one;
  for (int i = 0; i < 2 * k; ++i) scale = scale / delta;
  return one + scale * (delta - one) * index;
}

// Depth of every vertex from the marked one; -1 marks unreachable.
template <class S>
std::vector<int> vertex_depths(const WeightedGraph<S>& g) {
  std::vector<int> depth(g.size(), -1);
  std::vector<int> frontier{g.marked};
  depth[g.marked] = 0;
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int v : frontier) {
      for (const auto& e : g.edges) {
        int other = -1;
        if (e.u == v) other = e.v;
        else if (e.v == v) other = e.u;
        if (other >= 0 && depth[other] < 0) {
          depth[other] = depth[v] + 1;
          next.push_back(other);
        }
      }
    }
    frontier = std::move(next);
  }
  return depth;
}

// Global index from the even-depth vertices of a Perron-Frobenius-weighted
// principal graph, fed into 1 + 2 delta^(-2k) (delta - 1) I.
template <class S>
S gjs_parameter(const WeightedGraph<S>& g, const S& delta, int k) {
  using T = NumTraits<S>;
  validate_graph(g);
  const S one = T::from_int(1);
  const S zero = T::from_int(0);
  if (!T::definitely_positive(delta - one))
    fail(ErrorKind::InvalidWeights, "delta must exceed 1");
  for (int v = 0; v < g.size(); ++v) {
    S row = zero;
    for (const auto& e : g.edges) {
      S m = T::from_int(e.multiplicity);
      if (e.u == v && e.v == v) row = row + m * g.weights[v];
      else if (e.u == v) row = row + m * g.weights[e.v];
      else if (e.v == v) row = row + m * g.weights[e.u];
    }
    if (!T::close(row, delta * g.weights[v], 1e-8))
      fail(ErrorKind::InvalidWeights, "weights are not a Perron-Frobenius vector for delta");
  }
  std::vector<int> depth = vertex_depths(g);
  S index = zero;
  for (int v = 0; v < g.size(); ++v)
    if (depth[v] % 2 == 0) index = index + g.weights[v] * g.weights[v];
  return gjs_formula(delta, index, k);
}

template <class S>
S fc_formula(const S& delta_a, const S& delta_b, const S& index, const S& delta_alpha) {
  using T = NumTraits<S>;
  const S one = T::from_int(1);
  const S two = one + one;
  return one + two * index * (delta_a + delta_b - two) / (delta_alpha * delta_alpha);
}

// Depth-k truncations of a graph family, reporting the marked-vertex cutdown
// parameter for k = 2..k_max.
template <class S>
std::vector<Ext<S>> truncation_sequence(const std::function<WeightedGraph<S>(int)>& family,
                                        int k_max) {
  if (k_max < 2) fail(ErrorKind::SchemaError, "k_max must be at least 2");
  std::vector<Ext<S>> out;
  for (int k = 2; k <= k_max; ++k) {
    GraphReport<S> r = analyze_graph(family(k));
    out.push_back(cutdown(r, r.graph.marked));
  }
  return out;
}

// Chain of k+1 vertices rooted at the marked end, weighted by the quantum
// integers [1], ..., [k+1] at the given delta.
template <class S>
WeightedGraph<S> a_inf_truncation(const S& delta, int k) {
  using T = NumTraits<S>;
  if (k < 0) fail(ErrorKind::SchemaError, "depth must be nonnegative");
  WeightedGraph<S> g;
  S prev = T::from_int(0);
  S cur = T::from_int(1);
  for (int j = 0; j <= k; ++j) {
    if (!T::definitely_positive(cur))
      fail(ErrorKind::DegenerateDelta, "quantum integer vanished before the requested depth");
    g.add_vertex("v" + std::to_string(j), cur);
    S next = delta * cur - prev;
    prev = cur;
    cur = next;
  }
  for (int j = 0; j < k; ++j) g.add_edge(j, j + 1);
  g.marked = 0;
  return g;
}

template <class S>
struct NpmIndex {
  S index{};
  S p_deviation{};
  S m_deviation{};
};

// Tri-partite global index: levels N/P/M are assigned from the marked vertex
// by edge color (a joins N and P, b joins P and M); both bipartite layers
// must carry Perron-Frobenius weights. Returns the N-level sum of squared
// weights and the deviations of the P- and M-level sums from it.
template <class S>
NpmIndex<S> global_index_npm(const WeightedGraph<S>& g) {
  using T = NumTraits<S>;
  validate_graph(g);
  const S zero = T::from_int(0);
  int n = g.size();
  enum Level { Unset = -1, N = 0, P = 1, M = 2 };
  for (const auto& e : g.edges) {
    if (e.color != 'a' && e.color != 'b')
      fail(ErrorKind::PartitionInvalid, "every edge needs color a or b");
    if (e.u == e.v) fail(ErrorKind::PartitionInvalid, "loops admit no level assignment");
  }
  std::vector<int> level(n, Unset);
  level[g.marked] = N;
  std::vector<int> frontier{g.marked};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int v : frontier) {
      for (const auto& e : g.edges) {
        int other = -1;
        if (e.u == v) other = e.v;
        else if (e.v == v) other = e.u;
        if (other < 0) continue;
        int want;
        if (e.color == 'a')
          want = level[v] == N ? P : level[v] == P ? N : -2;
        else
          want = level[v] == P ? M : level[v] == M ? P : -2;
        if (want == -2)
          fail(ErrorKind::PartitionInvalid, "edge color conflicts with vertex levels");
        if (level[other] == Unset) {
          level[other] = want;
          next.push_back(other);
        } else if (level[other] != want) {
          fail(ErrorKind::PartitionInvalid, "inconsistent level assignment");
        }
      }
    }
    frontier = std::move(next);
  }

  // Bipartite PF checks: the per-vertex neighbour sums of each color must be
  // proportional to the weights, with one ratio per color.
  for (char color : {'a', 'b'}) {
    S ref_num = zero, ref_den = zero;
    std::vector<S> row(n, zero);
    std::vector<char> touched(n, 0);
    for (const auto& e : g.edges) {
      if (e.color != color) continue;
      S m = T::from_int(e.multiplicity);
      row[e.u] = row[e.u] + m * g.weights[e.v];
      row[e.v] = row[e.v] + m * g.weights[e.u];
      touched[e.u] = touched[e.v] = 1;
    }
    bool have_ref = false;
    for (int v = 0; v < n; ++v) {
      if (!touched[v]) continue;
      if (!have_ref) {
        ref_num = row[v];
        ref_den = g.weights[v];
        have_ref = true;
        continue;
      }
      if (!T::close(row[v] * ref_den, ref_num * g.weights[v], 1e-10))
        fail(ErrorKind::PFViolated, "bipartite Perron-Frobenius condition fails");
    }
    // Every vertex of the levels a color joins must meet that color's edges.
    if (have_ref) {
      for (int v = 0; v < n; ++v) {
        bool expected = color == 'a' ? (level[v] == N || level[v] == P)
                                     : (level[v] == P || level[v] == M);
        if (expected && !touched[v])
          fail(ErrorKind::PFViolated, "vertex misses its level's edge color");
      }
    }
  }

  NpmIndex<S> out;
  S sums[3] = {zero, zero, zero};
  bool present[3] = {false, false, false};
  for (int v = 0; v < n; ++v) {
    sums[level[v]] = sums[level[v]] + g.weights[v] * g.weights[v];
    present[level[v]] = true;
  }
  out.index = sums[N];
  out.p_deviation = present[P] ? T::abs(sums[P] - sums[N]) : zero;
  out.m_deviation = present[M] ? T::abs(sums[M] - sums[N]) : zero;
  return out;
}

} // namespace freeplanar
