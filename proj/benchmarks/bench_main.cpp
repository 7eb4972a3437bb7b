#include <benchmark/benchmark.h>

#include <string>

#include "freeplanar/diagram.hpp"
#include "freeplanar/graded.hpp"
#include "freeplanar/graph.hpp"
#include "freeplanar/laws.hpp"

using namespace freeplanar;

static void BM_EnumerateOneColor(benchmark::State& state) {
  std::string w(2 * state.range(0), 'c');
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_matchings(w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EnumerateOneColor)->DenseRange(4, 10, 2)->Complexity();

static void BM_EnumerateDoubleCup(benchmark::State& state) {
  std::string w;
  for (int i = 0; i < state.range(0); ++i) w += "aabb";
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_matchings(w));
}
BENCHMARK(BM_EnumerateDoubleCup)->DenseRange(2, 5, 1);

static void BM_GramMatrix(benchmark::State& state) {
  ShadedWord w{std::string(2 * state.range(0), 'c'), Shading::None};
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(w));
}
BENCHMARK(BM_GramMatrix)->DenseRange(2, 5, 1);

static void BM_PsdCheck(benchmark::State& state) {
  ShadedWord w{std::string(2 * state.range(0), 'c'), Shading::None};
  std::map<char, double> delta{{'c', 2.0}};
  for (auto _ : state) benchmark::DoNotOptimize(psd_check(w, delta));
}
BENCHMARK(BM_PsdCheck)->DenseRange(2, 5, 1);

static void BM_GradedMoments(benchmark::State& state) {
  auto dc = GradedElement::fc_double_cup();
  for (auto _ : state) benchmark::DoNotOptimize(moments(dc, state.range(0)));
}
BENCHMARK(BM_GradedMoments)->DenseRange(1, 3, 1);

static void BM_GraphAnalyze(benchmark::State& state) {
  WeightedGraph<double> g;
  int n = state.range(0);
  for (int v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v), 1.0 + 0.1 * v);
  for (int v = 1; v < n; ++v) g.add_edge(v - 1, v);
  g.add_edge(0, n - 1);
  for (auto _ : state) benchmark::DoNotOptimize(analyze_graph(g));
}
BENCHMARK(BM_GraphAnalyze)->DenseRange(4, 32, 7);

static void BM_ChainTruncation(benchmark::State& state) {
  auto family = [](int k) { return a_inf_truncation<double>(2.0, k); };
  for (auto _ : state)
    benchmark::DoNotOptimize(truncation_sequence<double>(family, state.range(0)));
}
BENCHMARK(BM_ChainTruncation)->DenseRange(4, 12, 4);

static void BM_LawMoments(benchmark::State& state) {
  Rational alpha(3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fp_moments(alpha, state.range(0)));
}
BENCHMARK(BM_LawMoments)->DenseRange(8, 64, 28);

static void BM_CupMomentsViaS(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(cup_moments_via_s(Rational(2), Rational(2), state.range(0)));
}
BENCHMARK(BM_CupMomentsViaS)->DenseRange(2, 10, 4);

static void BM_ClosureEnumeration(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fc_cup_moments_sym(state.range(0)));
}
BENCHMARK(BM_ClosureEnumeration)->DenseRange(1, 4, 1);

static void BM_StieltjesDensity(benchmark::State& state) {
  auto g = fp_cauchy_transform(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(stieltjes_density(g, 2.0));
}
BENCHMARK(BM_StieltjesDensity);

BENCHMARK_MAIN();
