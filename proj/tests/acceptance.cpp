#include <sys/wait.h>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "freeplanar/diagram.hpp"
#include "freeplanar/error.hpp"
#include "freeplanar/factor.hpp"
#include "freeplanar/graded.hpp"
#include "freeplanar/graph.hpp"
#include "freeplanar/laws.hpp"
#include "freeplanar/quad.hpp"

using namespace freeplanar;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL") << " - " << what
            << "\n";
  if (!ok) ++g_failures;
}

Rational rat(long long p, long long s = 1) { return Rational(p, s); }
Quad qs(long long x, long long y) { return Quad(Rational(x), Rational(y), 2); }

Int binom(int n, int k) {
  Int r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// ---- criteria 1 and 2

bool catalan_counts() {
  const long long expected[] = {1, 2, 5, 14, 42, 132, 429, 1430};
  for (int n = 1; n <= 8; ++n)
    if (enumerate_matchings(std::string(2 * n, 'c')).size() != static_cast<size_t>(expected[n - 1]))
      return false;
  return true;
}

bool fuss_catalan_counts() {
  for (int n = 1; n <= 5; ++n) {
    std::string w;
    for (int i = 0; i < n; ++i) w += "aabb";
    Int got(enumerate_matchings(w).size());
    if (got != binom(3 * n, n) / (2 * n + 1)) return false;
  }
  return true;
}

// ---- criterion 3

bool gram_positivity() {
  std::map<char, double> two{{'a', 2.0}, {'b', 2.0}};
  for (int len = 2; len <= 8; len += 2) {
    for (int mask = 0; mask < (1 << len); ++mask) {
      std::string w;
      for (int i = 0; i < len; ++i) w += ((mask >> i) & 1) ? 'b' : 'a';
      auto [ok, min_eig] = psd_check(ShadedWord{w, Shading::None}, two);
      if (!ok || min_eig < -1e-10) return false;
    }
  }
  auto g = gram_matrix(ShadedWord{"cccc", Shading::None});
  std::map<char, Rational> one{{'c', 1}};
  Rational det = g[0][0].eval(one) * g[1][1].eval(one) - g[0][1].eval(one) * g[1][0].eval(one);
  return det == Rational(0);
}

// ---- criteria 4 and 5

GradedElement random_closed_element(std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> nc(1, 2);
  std::uniform_int_distribution<int> letter(0, 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  GradedElement x{ShadedWord{}};
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

bool insertion_homomorphism() {
  std::mt19937 rng(20260814);
  for (int rep = 0; rep < 100; ++rep) {
    auto x = random_closed_element(rng, 6);
    auto y = random_closed_element(rng, 6);
    if (!(phi(wedge(x, y)) == star(phi(x), phi(y)))) return false;
    if (!(empty_component_scalar(phi(x)) == graded_trace(x))) return false;
  }
  return true;
}

GradedElement pure_color_element(std::mt19937& rng, char color, int half_len) {
  std::string w(static_cast<size_t>(2 * half_len), color);
  auto ms = enumerate_matchings(w);
  std::uniform_int_distribution<int> coeff(1, 4);
  ShadedWord beta{w, Shading::None};
  DiagramElement e(ShadedWord{}, beta);
  for (const auto& m : ms) e.add_term(m, ScalarPoly::constant(Rational(coeff(rng))));
  GradedElement x{ShadedWord{}};
  x.add_component(beta, e);
  return x;
}

bool alternating_centered_traces() {
  std::mt19937 rng(99991);
  auto unit = GradedElement::unit(ShadedWord{});
  for (int rep = 0; rep < 25; ++rep) {
    for (char first : {'a', 'b'}) {
      GradedElement prod;
      bool started = false;
      for (int i = 0; i < 4; ++i) {
        char color = (i % 2 == 0) ? first : (first == 'a' ? 'b' : 'a');
        int half = std::uniform_int_distribution<int>(1, 2)(rng);
        auto x = pure_color_element(rng, color, half);
        auto c = x - unit.scaled(graded_trace(x));
        prod = started ? wedge(prod, c) : c;
        started = true;
        if (i >= 1 && !(graded_trace(prod) == ScalarPoly())) return false;
      }
    }
  }
  return true;
}

// ---- criterion 6

bool law_consistency() {
  for (Rational alpha : {rat(1), rat(3, 2), rat(2)}) {
    auto rec = fp_moments(alpha, 10);
    auto mgf = fp_mgf_series(alpha, 10);
    for (int n = 0; n <= 10; ++n)
      if (rec[n] != mgf.at(n)) return false;
    double a = to_double(alpha);
    auto law = fp_density(a);
    if (std::abs(law_total_mass(law) - 1.0) > 1e-6) return false;
    if (std::abs(law_mean(law) - a) > 1e-6) return false;
    auto g = fp_cauchy_transform(a);
    double lo = law.lo + 0.1 * (law.hi - law.lo);
    double hi = law.lo + 0.9 * (law.hi - law.lo);
    for (int i = 0; i <= 10; ++i) {
      double x = lo + (hi - lo) * i / 10.0;
      if (std::abs(stieltjes_density(g, x) - law.density(x)) > 1e-3) return false;
    }
  }
  return true;
}

// ---- criterion 7

bool graph_goldens() {
  {
    WeightedGraph<Quad> g;
    g.add_vertex("u", Quad(rat(1)));
    g.add_vertex("v", Quad(rat(1)));
    g.add_edge(0, 1, 2);
    auto rep = analyze_graph(g);
    if (!rep.has_factor || rep.t.infinite || !(rep.t.value == Quad(rat(3, 2)))) return false;
  }
  {
    WeightedGraph<Quad> g;
    g.add_vertex("v", Quad(rat(1)));
    g.add_edge(0, 0, 2);
    auto rep = analyze_graph(g);
    if (!rep.has_factor || rep.t.infinite || !(rep.t.value == Quad(rat(2)))) return false;
  }
  WeightedGraph<Quad> a3;
  a3.add_vertex("*", Quad(rat(1)));
  a3.add_vertex("p", qs(0, 1));
  a3.add_vertex("q", Quad(rat(1)));
  a3.add_edge(0, 1);
  a3.add_edge(1, 2);
  a3.marked = 0;
  auto rep = analyze_graph(a3);
  Quad want_fdim = qs(-13, 10);
  if (rep.fdim_additive.infinite || !(rep.fdim_additive.value == want_fdim)) return false;
  if (rep.fdim_formula.infinite || !(rep.fdim_formula.value == want_fdim)) return false;
  auto cut = cutdown(rep, 0);
  if (cut.infinite || !(cut.value == qs(-3, 4))) return false;
  double printed = gjs_formula(std::sqrt(2.0), 2.0, 0);
  return std::abs(printed - cut.value.to_double()) <= 1e-9;
}

// ---- criterion 8

WeightedGraph<double> random_multigraph(std::mt19937& rng) {
  std::uniform_int_distribution<int> nv(2, 6);
  std::uniform_real_distribution<double> wt(0.25, 2.5);
  int n = nv(rng);
  WeightedGraph<double> g;
  for (int v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v), wt(rng));
  int total = 0;
  for (int v = 1; v < n; ++v) {
    g.add_edge(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
    ++total;
  }
  int want = std::uniform_int_distribution<int>(0, 2)(rng);
  while (want-- > 0 && total < 8) {
    int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int mult = std::min(std::uniform_int_distribution<int>(1, 2)(rng), 8 - total);
    g.add_edge(u, v, mult);
    total += mult;
  }
  g.marked = std::uniform_int_distribution<int>(0, n - 1)(rng);
  return g;
}

bool random_graph_fdim() {
  std::mt19937 rng(5150);
  for (int i = 0; i < 50; ++i) {
    auto g = random_multigraph(rng);
    auto rep = analyze_graph(g);
    if (rep.fdim_additive.infinite != rep.fdim_formula.infinite) return false;
    auto dec = fdim(rep.decomposition);
    if (dec.infinite != rep.fdim_additive.infinite) return false;
    if (!rep.fdim_additive.infinite) {
      if (std::abs(rep.fdim_additive.value - rep.fdim_formula.value) > 1e-12) return false;
      if (std::abs(dec.value - rep.fdim_additive.value) > 1e-12) return false;
    }
  }
  return true;
}

// ---- criterion 9

bool chain_truncations() {
  auto family = [](int k) { return a_inf_truncation<Quad>(Quad(rat(2)), k); };
  auto seq = truncation_sequence<Quad>(family, 12);
  if (seq.size() != 11 || seq[0].infinite || !(seq[0].value == Quad(rat(4)))) return false;
  for (size_t i = 1; i < seq.size(); ++i) {
    if (seq[i].infinite) return false;
    if (!(seq[i].value > seq[i - 1].value)) return false;
  }
  return seq.back().value > Quad(rat(10));
}

// ---- criterion 10

std::string series_row(const Series& s) {
  std::string out;
  for (int i = 0; i <= std::min(3, s.order()); ++i) {
    if (!out.empty()) out += ", ";
    out += to_string(s.at(i));
  }
  return out;
}

bool conflict_report(const fs::path& docs) {
  auto via_s = cup_moments_via_s(rat(2), rat(2), 5);
  auto direct = fc_cup_moments(rat(2), rat(2), 5);
  if (via_s != direct) return false;
  for (size_t i = 0; i < via_s.size(); ++i)
    if (std::abs(to_double(via_s[i]) - to_double(direct[i])) > 1e-9) return false;

  double printed = fc_formula(2.0, 2.0, 1.0, 1.0);
  WeightedGraph<Quad> chain;
  chain.add_vertex("*", Quad(rat(1)));
  chain.add_vertex("p", Quad(rat(1)));
  chain.add_vertex("m", Quad(rat(1)));
  chain.add_edge(0, 1, 2);
  chain.add_edge(1, 2, 2);
  chain.marked = 0;
  auto rep = analyze_graph(chain);
  auto cut = cutdown(rep, 0);
  if (cut.infinite) return false;
  double engine = cut.value.to_double();
  if (std::abs(printed - 5.0) > 1e-12 || std::abs(engine - 6.0) > 1e-12) return false;

  auto e22 = cup_s_transform(rat(2), rat(2), 3);
  auto a22 = cup_s_transform_alt(rat(2), rat(2), 3);
  auto e32 = cup_s_transform(rat(3), rat(2), 3);
  auto a32 = cup_s_transform_alt(rat(3), rat(2), 3);

  fs::create_directories(docs);
  std::ofstream out(docs / "conflict_report.md");
  if (!out) return false;
  out << "# Conflict report\n\n";
  out << "Cross-checks between printed closed forms and the engine. Each conflict is\n"
         "flagged and both values are reported; nothing is silently resolved.\n\n";
  out << "## 1. Doubled-chain parameter: printed 5 vs engine 6\n\n";
  out << "Graph: `* =a= p =b= m` (both edges doubled, unit vertex weights, marked `*`).\n\n";
  out << "- printed closed form `1 + 2 I (delta_a + delta_b - 2) / delta_alpha^2` at\n"
         "  `delta_a = delta_b = 2, I = 1, delta_alpha = 1`: **" << printed << "**\n";
  out << "- engine cutdown at `*` (free-dimension additivity, then amplification): **"
      << engine << "**\n";
  out << "- status: **DIVERGENT**\n\n";
  out << "The engine value is exact (rational arithmetic); the two edge bundles\n"
         "contribute free dimension 1 - 3*(1/9) + 2*(2/9) + 2*(2/9) = 14/9, giving\n"
         "t = 14/9 at total weight 1 and t' = 1 + (14/9 - 1) * 9 = 6 after cutting\n"
         "down to the marked vertex.\n\n";
  out << "## 2. Two-color product transform: printed rational form vs engine product\n\n";
  out << "Engine: corner law of the first color (mass normalized to 1) multiplied\n"
         "freely with the second-color law,\n"
         "`S_x(z) = 1 / ((delta_a z + 1)(z + delta_b))`.\n\n";
  out << "Printed form:\n"
         "`S_x(z) = (z+1)^2 (z-1)(delta_a z - 1) / (((delta_b-1) z + delta_b)((delta_a-1) z + 1))`.\n\n";
  out << "Taylor coefficients, orders 0..3:\n\n";
  out << "| parameters | engine | printed |\n|---|---|---|\n";
  out << "| delta_a = 2, delta_b = 2 | " << series_row(e22) << " | " << series_row(a22)
      << " |\n";
  out << "| delta_a = 3, delta_b = 2 | " << series_row(e32) << " | " << series_row(a32)
      << " |\n\n";
  out << "- first divergent order at (2, 2): **2** (the order-1 gap carries a factor\n"
         "  `(delta - 2)(delta + 1)`, so it vanishes there by coincidence)\n";
  out << "- first divergent order at (3, 2): **1**\n";
  out << "- status: **DIVERGENT**\n\n";
  std::string moment_row;
  for (const auto& v : via_s) {
    if (!moment_row.empty()) moment_row += ", ";
    moment_row += to_string(v);
  }
  out << "The engine route is validated independently: its moments agree with the\n"
         "direct closure enumeration through order 5 at `delta_a = delta_b = 2`\n"
         "(" << moment_row << "). The printed form shares only the constant\n"
         "term `1/delta_b`. Rescaling the corner law (mass `1/delta_a` instead of 1)\n"
         "changes the moment normalization but not the order at which the two\n"
         "transforms part ways.\n";
  out.close();

  std::ifstream back(docs / "conflict_report.md");
  std::stringstream ss;
  ss << back.rdbuf();
  std::string text = ss.str();
  size_t flags = 0;
  for (size_t pos = text.find("DIVERGENT"); pos != std::string::npos;
       pos = text.find("DIVERGENT", pos + 1))
    ++flags;
  return flags >= 2;
}

// ---- criterion 11

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& cli, const std::string& args, const fs::path& tmp) {
  std::string cmd = "\"" + cli + "\" " + args + " > \"" + tmp.string() + "\" 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
  if (rc >= 0 && WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string strip_ws(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

bool cli_goldens(const std::string& cli) {
  fs::path dir = fs::path("acceptance_fixtures");
  fs::create_directories(dir);
  {
    std::ofstream a3(dir / "a3.json");
    a3 << R"({"vertices":[{"id":"*","weight":1},{"id":"p","weight":"sqrt2"},{"id":"q","weight":1}],)"
       << R"("edges":[{"u":"*","v":"p"},{"u":"p","v":"q"}],"marked":"*"})";
    std::ofstream chain(dir / "fc_chain.json");
    chain << R"({"vertices":[{"id":"*","weight":1},{"id":"p","weight":1},{"id":"m","weight":1}],)"
          << R"("edges":[{"u":"*","v":"p","multiplicity":2,"color":"a"},)"
          << R"({"u":"p","v":"m","multiplicity":2,"color":"b"}],"marked":"*"})";
  }
  std::string a3 = (dir / "a3.json").string();
  std::string chain = (dir / "fc_chain.json").string();
  std::string csv = (dir / "density.csv").string();

  struct Golden {
    std::string args;
    int code;
    std::vector<std::string> needles;
  };
  std::vector<Golden> goldens = {
      {"diagrams count --word cccccc", 0, {"5\n"}},
      {"diagrams count --word aabbaabb --npm P", 0, {"3\n"}},
      {"diagrams gram --word cccc --delta c=2 --format json", 0, {}},
      {"diagrams list --word aabb", 0, {"count: 1", "[(0,1),(2,3)]"}},
      {"graph analyze --graph " + a3 + " --exact sqrt2", 0,
       {"decomposition: L(F(10√2-13))", "B: none", "mode: exact(sqrt2)"}},
      {"graph cutdown --graph " + a3 + " --exact sqrt2 --vertex '*'", 0,
       {"t': 4√2-3 ≈ 2.65685425"}},
      {"graph pf --graph " + a3, 0, {"lambda: 1.41421356"}},
      {"graph truncate --family a_inf --delta 2 --kmax 12", 0, {"k=2: 4", "k=12:"}},
      {"param gjs --delta 1.41421356237309515 --index 2 --k 0 --graph " + a3, 0,
       {"printed: 2.65685425", "engine: 2.65685425", "flag: CONSISTENT"}},
      {"param fc --delta-a 2 --delta-b 2 --index 1 --delta-alpha 1 --graph " + chain, 0,
       {"printed: 5", "engine: 6", "flag: DIVERGENT"}},
      {"law poisson --alpha 1 --moments 4", 0,
       {"mode: exact", "truncation: N=4", "moments: 1 1 2 5 14"}},
      {"law poisson --alpha 1 --density --xmin 0 --xmax 4 --step 0.04 --csv " + csv, 0,
       {"rows: 101", "mass: 1"}},
      {"law cup --delta-a 2 --delta-b 2 --moments 3", 0,
       {"s-route: 1 4 28 252", "enumeration: 1 4 28 252", "agreement: exact"}},
  };

  for (const auto& g : goldens) {
    auto r1 = run_cli(cli, g.args, dir / "run1.txt");
    std::string csv1;
    if (g.args.find("--csv") != std::string::npos) {
      std::ifstream c(csv);
      std::stringstream ss;
      ss << c.rdbuf();
      csv1 = ss.str();
    }
    auto r2 = run_cli(cli, g.args, dir / "run2.txt");
    if (r1.code != g.code || r2.code != g.code) {
      std::cerr << "exit code mismatch for: " << g.args << " (got " << r1.code << ")\n";
      return false;
    }
    if (r1.out != r2.out) {
      std::cerr << "output differs between runs for: " << g.args << "\n";
      return false;
    }
    for (const auto& needle : g.needles) {
      if (r1.out.find(needle) == std::string::npos) {
        std::cerr << "missing '" << needle << "' in output of: " << g.args << "\n";
        return false;
      }
    }
    if (g.args.find("--csv") != std::string::npos) {
      std::ifstream c(csv);
      std::stringstream ss;
      ss << c.rdbuf();
      if (csv1 != ss.str() || csv1.empty()) {
        std::cerr << "csv differs between runs\n";
        return false;
      }
      size_t lines = 0;
      for (char ch : csv1)
        if (ch == '\n') ++lines;
      if (lines != 102 || csv1.rfind("x,density\n", 0) != 0) {
        std::cerr << "csv shape unexpected\n";
        return false;
      }
    }
  }

  auto gram = run_cli(cli, "diagrams gram --word cccc --delta c=2 --format json",
                      dir / "run1.txt");
  if (strip_ws(gram.out).find("\"matrix\":[[4,2],[2,4]]") == std::string::npos) {
    std::cerr << "gram json payload unexpected\n";
    return false;
  }

  if (run_cli(cli, "diagrams bogus", dir / "run1.txt").code != 1) return false;
  if (run_cli(cli, "diagrams count --word aabbaabb --npm N", dir / "run1.txt").code != 2)
    return false;
  if (run_cli(cli, "graph analyze --graph " + (dir / "missing.json").string(),
              dir / "run1.txt").code != 2)
    return false;
  return true;
}

} // namespace

int main(int argc, char** argv) {
  std::string cli;
  fs::path docs = "docs";
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string flag = argv[i];
    if (flag == "--cli") cli = argv[i + 1];
    else if (flag == "--docs") docs = argv[i + 1];
  }

  auto guard = [](auto&& fn) -> bool {
    try {
      return fn();
    } catch (const Error& e) {
      std::cerr << "unexpected error: " << e.what() << "\n";
      return false;
    }
  };

  report(1, guard(catalan_counts), "one-color pairing counts match the Catalan sequence");
  report(2, guard(fuss_catalan_counts),
         "double-cup pairing counts match the Fuss-Catalan closed form");
  report(3, guard(gram_positivity),
         "Gram matrices are positive at loop value 2 and degenerate exactly at 1");
  report(4, guard(insertion_homomorphism),
         "insertion map is a homomorphism onto the star product and preserves the trace");
  report(5, guard(alternating_centered_traces),
         "alternating centered one-color products have zero trace");
  report(6, guard(law_consistency),
         "law moments, generating function, mass, mean, and boundary density agree");
  report(7, guard(graph_goldens), "graph golden values are exact");
  report(8, guard(random_graph_fdim), "free-dimension routes agree on 50 random multigraphs");
  report(9, guard(chain_truncations), "chain truncation parameters start at 4 and grow past 10");
  report(10, guard([&] { return conflict_report(docs); }),
         "transform route matches enumeration; conflict report generated and flagged");
  if (cli.empty()) {
    report(11, false, "CLI binary path not supplied");
  } else {
    report(11, guard([&] { return cli_goldens(cli); }),
           "CLI goldens are byte-identical across runs with the expected payloads");
  }

  if (g_failures == 0) {
    std::cout << "acceptance: all criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << g_failures << " criteria failed\n";
  return 1;
}
