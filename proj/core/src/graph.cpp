#include "freeplanar/graph.hpp"

namespace freeplanar {

PerronFrobenius perron_frobenius(const WeightedGraph<double>& g) {
  validate_graph(g);
  int n = g.size();
  std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
  for (const auto& e : g.edges) {
    if (e.u == e.v) {
      A[e.u][e.u] += e.multiplicity;
    } else {
      A[e.u][e.v] += e.multiplicity;
      A[e.v][e.u] += e.multiplicity;
    }
  }
  auto apply = [&](const std::vector<double>& v) {
    std::vector<double> w(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w[i] += A[i][j] * v[j];
    return w;
  };

  std::vector<double> v(n, 1.0);
  for (int iter = 0; iter < 100000; ++iter) {
    std::vector<double> av = apply(v);
    double num = 0, den = 0;
    for (int i = 0; i < n; ++i) {
      num += v[i] * av[i];
      den += v[i] * v[i];
    }
    double lambda = num / den;
    double residual = 0;
    for (int i = 0; i < n; ++i) residual = std::max(residual, std::abs(av[i] - lambda * v[i]));
    if (residual <= 1e-12) {
      PerronFrobenius out;
      out.lambda = lambda;
      out.weights = v;
      return out;
    }
    // Shift by the identity so bipartite spectra cannot oscillate, then pin
    // the marked vertex at 1.
    for (int i = 0; i < n; ++i) av[i] += v[i];
    double pin = av[g.marked];
    if (!(pin > 0)) fail(ErrorKind::NumericFailure, "power iteration collapsed");
    for (int i = 0; i < n; ++i) av[i] /= pin;
    v = std::move(av);
  }
  fail(ErrorKind::NumericFailure, "power iteration did not converge");
}

template struct WeightedGraph<double>;
template struct WeightedGraph<Quad>;
template struct GraphReport<double>;
template struct GraphReport<Quad>;
template struct NpmIndex<double>;
template struct NpmIndex<Quad>;

template void validate_graph(const WeightedGraph<double>&);
template void validate_graph(const WeightedGraph<Quad>&);
template GraphReport<double> analyze_graph(const WeightedGraph<double>&);
template GraphReport<Quad> analyze_graph(const WeightedGraph<Quad>&);
template Ext<double> cutdown(const GraphReport<double>&, int);
template Ext<Quad> cutdown(const GraphReport<Quad>&, int);
template double gjs_formula(const double&, const double&, int);
template Quad gjs_formula(const Quad&, const Quad&, int);
template std::vector<int> vertex_depths(const WeightedGraph<double>&);
template std::vector<int> vertex_depths(const WeightedGraph<Quad>&);
template double gjs_parameter(const WeightedGraph<double>&, const double&, int);
template Quad gjs_parameter(const WeightedGraph<Quad>&, const Quad&, int);
template double fc_formula(const double&, const double&, const double&, const double&);
template Quad fc_formula(const Quad&, const Quad&, const Quad&, const Quad&);
template std::vector<Ext<double>> truncation_sequence(
    const std::function<WeightedGraph<double>(int)>&, int);
template std::vector<Ext<Quad>> truncation_sequence(const std::function<WeightedGraph<Quad>(int)>&,
                                                    int);
template WeightedGraph<double> a_inf_truncation(const double&, int);
template WeightedGraph<Quad> a_inf_truncation(const Quad&, int);
template NpmIndex<double> global_index_npm(const WeightedGraph<double>&);
template NpmIndex<Quad> global_index_npm(const WeightedGraph<Quad>&);

} // namespace freeplanar
