#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "freeplanar/diagram.hpp"
#include "freeplanar/error.hpp"
#include "freeplanar/factor.hpp"
#include "freeplanar/graph.hpp"
#include "freeplanar/laws.hpp"
#include "freeplanar/quad.hpp"

namespace fp = freeplanar;
using nlohmann::ordered_json;

namespace {

std::string fnum(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double env_tolerance(double fallback) {
  const char* s = std::getenv("FREEPLANAR_PRECISION");
  if (s == nullptr || *s == '\0') return fallback;
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == nullptr || *end != '\0' || v <= 0.0)
    fp::fail(fp::ErrorKind::SchemaError, "FREEPLANAR_PRECISION must be a positive number");
  return v;
}

// Rational from "p/q", integer, or decimal text.
fp::Rational to_rational(const std::string& text) {
  std::string s = text;
  if (s.empty()) fp::fail(fp::ErrorKind::SchemaError, "empty number");
  auto dot = s.find('.');
  if (dot == std::string::npos) return fp::parse_rational(s);
  bool neg = s[0] == '-';
  if (neg || s[0] == '+') s = s.substr(1);
  dot = s.find('.');
  std::string ip = s.substr(0, dot), tail = s.substr(dot + 1);
  if (ip.empty()) ip = "0";
  fp::Rational den = 1;
  for (char c : tail) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fp::fail(fp::ErrorKind::SchemaError, "not a number: '" + text + "'");
    den *= 10;
  }
  fp::Rational v = fp::parse_rational(ip);
  if (!tail.empty()) v += fp::parse_rational(tail) / den;
  return neg ? -v : v;
}

// Exact scalar from "R", "sqrtD", "R*sqrtD", or those with a trailing +R / -R.
fp::Quad parse_quad_string(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto pos = s.find("sqrt");
  if (pos == std::string::npos) return fp::Quad(to_rational(s));
  fp::Rational y = 1;
  if (pos > 0) {
    std::string pre = s.substr(0, pos);
    if (!pre.empty() && pre.back() == '*') pre.pop_back();
    if (pre == "-") y = -1;
    else if (!pre.empty() && pre != "+") y = to_rational(pre);
  }
  size_t e = pos + 4;
  size_t digits = e;
  while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
  if (digits == e) fp::fail(fp::ErrorKind::SchemaError, "bad radicand in '" + text + "'");
  long long d = std::stoll(s.substr(e, digits - e));
  fp::Rational x = 0;
  if (digits < s.size()) {
    char op = s[digits];
    if (op != '+' && op != '-')
      fp::fail(fp::ErrorKind::SchemaError, "bad scalar syntax: '" + text + "'");
    x = to_rational(s.substr(digits + 1));
    if (op == '-') x = -x;
  }
  return fp::Quad(x, y, d);
}

std::string render(double v) { return fnum(v); }
std::string render(const fp::Quad& q) { return q.str() + " ≈ " + fnum(q.to_double()); }
std::string render(const fp::Rational& r) {
  return fp::to_string(r) + " ≈ " + fnum(fp::to_double(r));
}

std::string short_render(double v) { return fnum(v); }
std::string short_render(const fp::Quad& q) { return q.str(); }

template <class S>
std::string render_ext(const fp::Ext<S>& e) {
  return e.infinite ? std::string("inf") : render(e.value);
}
template <class S>
std::string short_render_ext(const fp::Ext<S>& e) {
  return e.infinite ? std::string("inf") : short_render(e.value);
}

ordered_json jval(double v) { return v; }
ordered_json jval(const fp::Quad& q) {
  return ordered_json{{"exact", q.str()}, {"float", q.to_double()}};
}
template <class S>
ordered_json jval_ext(const fp::Ext<S>& e) {
  if (e.infinite) return "inf";
  return jval(e.value);
}

template <class S>
std::string decomposition_str(const fp::FactorDecomposition<S>& dec) {
  std::string out;
  for (const auto& s : dec.summands) {
    if (!out.empty()) out += " (+) ";
    switch (s.kind) {
      case fp::SummandKind::FreeGroup:
        out += "L(F(" + short_render_ext(s.t) + "))";
        if (!(s.trace == fp::NumTraits<S>::from_int(1))) out += "_" + short_render(s.trace);
        break;
      case fp::SummandKind::MatrixBlock:
        if (s.n == 1) {
          out += "atom(" + short_render(s.trace) + ")";
        } else {
          out += "M" + std::to_string(s.n) + "(" + short_render(s.trace) + ")";
        }
        break;
      case fp::SummandKind::Diffuse:
        out += "diffuse(" + short_render(s.trace) + ")";
        break;
    }
  }
  return out.empty() ? "0" : out;
}

template <class S>
ordered_json decomposition_json(const fp::FactorDecomposition<S>& dec) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : dec.summands) {
    ordered_json o;
    switch (s.kind) {
      case fp::SummandKind::FreeGroup:
        o["kind"] = "free_group";
        o["t"] = jval_ext(s.t);
        break;
      case fp::SummandKind::MatrixBlock:
        o["kind"] = "matrix_block";
        o["n"] = s.n;
        break;
      case fp::SummandKind::Diffuse:
        o["kind"] = "diffuse";
        break;
    }
    o["trace"] = jval(s.trace);
    arr.push_back(o);
  }
  return arr;
}

// ---------------------------------------------------------------- graph IO

template <class S>
fp::WeightedGraph<S> load_graph(const std::string& path,
                                const std::function<S(const nlohmann::json&)>& weight) {
  std::ifstream in(path);
  if (!in) fp::fail(fp::ErrorKind::SchemaError, "cannot open graph file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    fp::fail(fp::ErrorKind::SchemaError, "invalid JSON in '" + path + "'");
  }
  fp::WeightedGraph<S> g;
  try {
    if (!j.contains("vertices") || !j["vertices"].is_array())
      fp::fail(fp::ErrorKind::SchemaError, "graph needs a 'vertices' array");
    for (const auto& v : j["vertices"])
      g.add_vertex(v.at("id").get<std::string>(), weight(v.at("weight")));
    for (const auto& e : j.value("edges", nlohmann::json::array())) {
      int u = g.index_of(e.at("u").get<std::string>());
      int w = g.index_of(e.at("v").get<std::string>());
      int mult = e.value("multiplicity", 1);
      char color = 0;
      if (e.contains("color")) {
        std::string c = e.at("color").get<std::string>();
        if (c.size() != 1) fp::fail(fp::ErrorKind::SchemaError, "edge color must be one character");
        color = c[0];
      }
      g.add_edge(u, w, mult, color);
    }
    if (j.contains("marked")) g.marked = g.index_of(j.at("marked").get<std::string>());
  } catch (const nlohmann::json::exception& ex) {
    fp::fail(fp::ErrorKind::SchemaError, std::string("graph schema: ") + ex.what());
  }
  fp::validate_graph(g);
  return g;
}

double weight_float(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_quad_string(v.get<std::string>()).to_double();
  fp::fail(fp::ErrorKind::SchemaError, "weights must be numbers or strings");
}

fp::Quad weight_exact(const nlohmann::json& v) {
  if (v.is_number_integer()) return fp::Quad(fp::Rational(v.get<long long>()));
  if (v.is_string()) return parse_quad_string(v.get<std::string>());
  fp::fail(fp::ErrorKind::SchemaError, "exact mode needs integer or string weights");
}

// ---------------------------------------------------------------- reports

void emit(const ordered_json& j, bool as_json, const std::string& text) {
  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

struct DiagramArgs {
  std::string word;
  std::string npm;
  std::vector<std::string> delta;
  std::string format = "text";
};

fp::ShadedWord make_word(const DiagramArgs& a) {
  fp::ShadedWord w;
  w.letters = a.word;
  if (a.npm == "N") w.initial = fp::Shading::N;
  else if (a.npm == "P") w.initial = fp::Shading::P;
  else if (a.npm == "M") w.initial = fp::Shading::M;
  else if (!a.npm.empty())
    fp::fail(fp::ErrorKind::SchemaError, "--npm must be N, P, or M");
  fp::require_valid_word(w);
  return w;
}

std::map<char, fp::Rational> delta_map_exact(const std::vector<std::string>& specs) {
  std::map<char, fp::Rational> m;
  for (const auto& s : specs) {
    auto eq = s.find('=');
    if (eq != 1 || s.size() < 3)
      fp::fail(fp::ErrorKind::SchemaError, "--delta expects c=value");
    m[s[0]] = to_rational(s.substr(2));
  }
  return m;
}

std::map<char, double> delta_map_float(const std::vector<std::string>& specs) {
  std::map<char, double> m;
  for (auto& [c, r] : delta_map_exact(specs)) m[c] = fp::to_double(r);
  return m;
}

void run_diagrams_count(const DiagramArgs& a) {
  auto w = make_word(a);
  std::cout << fp::enumerate_matchings(w.letters).size() << "\n";
}

void run_diagrams_list(const DiagramArgs& a) {
  auto w = make_word(a);
  auto ms = fp::enumerate_matchings(w.letters);
  ordered_json j;
  j["mode"] = "exact";
  j["word"] = a.word;
  j["count"] = ms.size();
  ordered_json arr = ordered_json::array();
  std::string text = "mode: exact\nword: " + a.word + "\ncount: " + std::to_string(ms.size()) + "\n";
  for (const auto& m : ms) {
    arr.push_back(fp::format_matching(m));
    text += fp::format_matching(m) + "\n";
  }
  j["matchings"] = arr;
  emit(j, a.format == "json", text);
}

void run_diagrams_gram(const DiagramArgs& a) {
  auto w = make_word(a);
  auto gram = fp::gram_matrix(w);
  const bool have_delta = !a.delta.empty();
  auto dm = delta_map_exact(a.delta);
  ordered_json j;
  j["mode"] = "exact";
  j["word"] = a.word;
  j["size"] = gram.size();
  ordered_json rows = ordered_json::array();
  std::string text = "mode: exact\nword: " + a.word + "\nsize: " + std::to_string(gram.size()) + "\n";
  for (const auto& row : gram) {
    ordered_json jr = ordered_json::array();
    std::string line;
    for (const auto& entry : row) {
      if (!line.empty()) line += "  ";
      if (have_delta) {
        fp::Rational v = entry.eval(dm);
        line += fp::to_string(v);
        fp::Int num = numerator(v);
        if (denominator(v) == 1 && num >= std::numeric_limits<long long>::min() &&
            num <= std::numeric_limits<long long>::max()) {
          jr.push_back(static_cast<long long>(num));
        } else {
          jr.push_back(fp::to_string(v));
        }
      } else {
        line += entry.str();
        jr.push_back(entry.str());
      }
    }
    rows.push_back(jr);
    text += line + "\n";
  }
  j["matrix"] = rows;
  emit(j, a.format == "json", text);
}

void run_diagrams_psd(const DiagramArgs& a) {
  auto w = make_word(a);
  double tol = env_tolerance(1e-10);
  auto [ok, min_eig] = fp::psd_check(w, delta_map_float(a.delta), tol);
  ordered_json j;
  j["mode"] = "float";
  j["word"] = a.word;
  j["psd"] = ok;
  j["min_eig"] = min_eig;
  j["tol"] = tol;
  std::string text = "mode: float\nword: " + a.word + "\npsd: " + (ok ? "yes" : "no") +
                     "\nmin_eig: " + fnum(min_eig) + "\ntol: " + fnum(tol) + "\n";
  emit(j, a.format == "json", text);
}

struct GraphArgs {
  std::string file;
  std::string exact;  // sqrtD tag; empty means float mode
  std::string vertex;
  std::string family = "a_inf";
  std::string delta = "2";
  int kmax = 12;
  std::string format = "text";
};

template <class S>
void analyze_report(const fp::WeightedGraph<S>& g, const std::string& mode, bool as_json) {
  auto rep = fp::analyze_graph(g);
  ordered_json j;
  j["mode"] = mode;
  j["vertices"] = g.size();
  j["edges"] = g.edge_total();
  j["decomposition"] = decomposition_str(rep.decomposition);
  j["summands"] = decomposition_json(rep.decomposition);
  j["has_factor"] = rep.has_factor;
  if (rep.has_factor) {
    j["t"] = jval_ext(rep.t);
    j["factor_trace"] = jval(rep.factor_trace);
  }
  ordered_json batoms = ordered_json::array();
  std::string btext;
  for (size_t i = 0; i < rep.atom_vertices.size(); ++i) {
    int v = rep.atom_vertices[i];
    batoms.push_back({{"vertex", rep.graph.ids[v]}, {"trace", jval(rep.atom_traces[i])}});
    if (!btext.empty()) btext += ", ";
    btext += rep.graph.ids[v] + "=" + short_render(rep.atom_traces[i]);
  }
  j["B"] = batoms;
  j["fdim_additive"] = jval_ext(rep.fdim_additive);
  j["fdim_formula"] = jval_ext(rep.fdim_formula);
  j["single_edge"] = rep.single_edge;
  std::string text = "mode: " + mode + "\n";
  text += "vertices: " + std::to_string(g.size()) + "\n";
  text += "edges: " + std::to_string(g.edge_total()) + "\n";
  text += "decomposition: " + decomposition_str(rep.decomposition) + "\n";
  if (rep.has_factor) {
    text += "t: " + render_ext(rep.t) + "\n";
    text += "factor trace: " + short_render(rep.factor_trace) + "\n";
  }
  text += "B: " + (btext.empty() ? std::string("none") : btext) + "\n";
  text += "fdim additive: " + render_ext(rep.fdim_additive) + "\n";
  text += "fdim formula: " + render_ext(rep.fdim_formula) + "\n";
  text += std::string("single edge: ") + (rep.single_edge ? "yes" : "no") + "\n";
  emit(j, as_json, text);
}

template <class S>
void cutdown_report(const fp::WeightedGraph<S>& g, const std::string& vertex,
                    const std::string& mode, bool as_json) {
  auto rep = fp::analyze_graph(g);
  auto t = fp::cutdown(rep, g.index_of(vertex));
  ordered_json j;
  j["mode"] = mode;
  j["vertex"] = vertex;
  j["t"] = jval_ext(t);
  std::string text = "mode: " + mode + "\nvertex: " + vertex + "\nt': " + render_ext(t) + "\n";
  emit(j, as_json, text);
}

void run_graph_analyze(const GraphArgs& a) {
  if (a.exact.empty()) {
    analyze_report(load_graph<double>(a.file, weight_float), "float", a.format == "json");
  } else {
    fp::resolve_sqrt_tag(a.exact);
    analyze_report(load_graph<fp::Quad>(a.file, weight_exact), "exact(" + a.exact + ")",
                   a.format == "json");
  }
}

void run_graph_cutdown(const GraphArgs& a) {
  if (a.exact.empty()) {
    cutdown_report(load_graph<double>(a.file, weight_float), a.vertex, "float",
                   a.format == "json");
  } else {
    fp::resolve_sqrt_tag(a.exact);
    cutdown_report(load_graph<fp::Quad>(a.file, weight_exact), a.vertex,
                   "exact(" + a.exact + ")", a.format == "json");
  }
}

void run_graph_pf(const GraphArgs& a) {
  auto g = load_graph<double>(a.file, weight_float);
  auto pf = fp::perron_frobenius(g);
  ordered_json j;
  j["mode"] = "float";
  j["lambda"] = pf.lambda;
  ordered_json wts;
  std::string text = "mode: float\nlambda: " + fnum(pf.lambda) + "\n";
  for (int i = 0; i < g.size(); ++i) {
    wts[g.ids[i]] = pf.weights[i];
    text += "weight " + g.ids[i] + ": " + fnum(pf.weights[i]) + "\n";
  }
  j["weights"] = wts;
  emit(j, a.format == "json", text);
}

void run_graph_truncate(const GraphArgs& a) {
  if (a.family != "a_inf")
    fp::fail(fp::ErrorKind::SchemaError, "unknown truncation family '" + a.family + "'");
  if (a.kmax < 2) fp::fail(fp::ErrorKind::SchemaError, "--kmax must be at least 2");
  fp::Quad delta = parse_quad_string(a.delta);
  std::string mode = delta.d == 0 ? "exact" : "exact(sqrt" + std::to_string(delta.d) + ")";
  auto family = [&delta](int k) { return fp::a_inf_truncation<fp::Quad>(delta, k); };
  auto seq = fp::truncation_sequence<fp::Quad>(family, a.kmax);
  ordered_json j;
  j["mode"] = mode;
  j["family"] = a.family;
  j["delta"] = delta.str();
  ordered_json list = ordered_json::array();
  std::string text = "mode: " + mode + "\nfamily: " + a.family + "\ndelta: " + delta.str() + "\n";
  for (size_t i = 0; i < seq.size(); ++i) {
    list.push_back(jval_ext(seq[i]));
    text += "k=" + std::to_string(i + 2) + ": " + render_ext(seq[i]) + "\n";
  }
  j["t_prime"] = list;
  emit(j, a.format == "json", text);
}

struct ParamArgs {
  double delta = 0.0;
  double index = 0.0;
  int k = 0;
  double delta_a = 0.0;
  double delta_b = 0.0;
  double delta_alpha = 0.0;
  std::string graph;
  std::string format = "text";
};

void param_report(double printed, const std::string& graph_file, bool as_json) {
  ordered_json j;
  j["mode"] = "float";
  j["printed"] = printed;
  std::string text = "mode: float\nprinted: " + fnum(printed) + "\n";
  if (!graph_file.empty()) {
    auto g = load_graph<double>(graph_file, weight_float);
    auto rep = fp::analyze_graph(g);
    auto t = fp::cutdown(rep, g.marked);
    double engine = t.infinite ? std::numeric_limits<double>::infinity() : t.value;
    double tol = env_tolerance(1e-6);
    const char* flag = std::abs(engine - printed) <= tol ? "CONSISTENT" : "DIVERGENT";
    j["engine"] = engine;
    j["flag"] = flag;
    j["tol"] = tol;
    text += "engine: " + fnum(engine) + "\nflag: " + flag + "\n";
  }
  emit(j, as_json, text);
}

void run_param_gjs(const ParamArgs& a) {
  param_report(fp::gjs_formula(a.delta, a.index, a.k), a.graph, a.format == "json");
}

void run_param_fc(const ParamArgs& a) {
  param_report(fp::fc_formula(a.delta_a, a.delta_b, a.index, a.delta_alpha), a.graph,
               a.format == "json");
}

struct LawArgs {
  std::string alpha = "1";
  std::string delta_a = "2";
  std::string delta_b = "2";
  int moments = -1;
  bool density = false;
  double xmin = 0.0;
  double xmax = 0.0;
  double step = 0.0;
  std::string csv;
  std::string format = "text";
};

std::string join_moments(const std::vector<fp::Rational>& m) {
  std::string out;
  for (const auto& v : m) {
    if (!out.empty()) out += " ";
    out += fp::to_string(v);
  }
  return out;
}

void run_law_poisson(const LawArgs& a) {
  if (a.density) {
    if (a.csv.empty())
      fp::fail(fp::ErrorKind::SchemaError, "--density needs --csv FILE");
    if (a.step <= 0.0 || a.xmax < a.xmin)
      fp::fail(fp::ErrorKind::SchemaError, "need xmin <= xmax and positive step");
    double alpha = fp::to_double(to_rational(a.alpha));
    auto law = fp::fp_density(alpha);
    std::ofstream out(a.csv);
    if (!out) fp::fail(fp::ErrorKind::SchemaError, "cannot open '" + a.csv + "' for writing");
    out << "x,density\n";
    int rows = static_cast<int>((a.xmax - a.xmin) / a.step + 0.5) + 1;
    for (int i = 0; i < rows; ++i) {
      double x = a.xmin + i * a.step;
      out << fnum(x) << "," << fnum(law.density(x)) << "\n";
    }
    ordered_json j;
    j["mode"] = "float";
    j["alpha"] = alpha;
    j["support"] = {law.lo, law.hi};
    ordered_json atoms = ordered_json::array();
    for (auto& at : law.atoms) atoms.push_back({{"location", at.first}, {"mass", at.second}});
    j["atoms"] = atoms;
    j["rows"] = rows;
    j["mass"] = fp::law_total_mass(law);
    j["csv"] = a.csv;
    std::string text = "mode: float\nlaw: free-poisson alpha=" + fnum(alpha) + "\n";
    text += "support: [" + fnum(law.lo) + ", " + fnum(law.hi) + "]\n";
    text += "atom: " + (law.atoms.empty() ? std::string("none")
                                          : fnum(law.atoms[0].second) + " at " +
                                                fnum(law.atoms[0].first)) + "\n";
    text += "rows: " + std::to_string(rows) + "\n";
    text += "mass: " + fnum(fp::law_total_mass(law)) + "\n";
    text += "csv: " + a.csv + "\n";
    emit(j, a.format == "json", text);
    return;
  }
  if (a.moments < 0)
    fp::fail(fp::ErrorKind::SchemaError, "need --moments N or --density");
  fp::Rational alpha = to_rational(a.alpha);
  auto m = fp::fp_moments(alpha, a.moments);
  ordered_json j;
  j["mode"] = "exact";
  j["truncation"] = a.moments;
  j["alpha"] = fp::to_string(alpha);
  ordered_json arr = ordered_json::array();
  for (auto& v : m) arr.push_back(fp::to_string(v));
  j["moments"] = arr;
  std::string text = "mode: exact\ntruncation: N=" + std::to_string(a.moments) +
                     "\nmoments: " + join_moments(m) + "\n";
  emit(j, a.format == "json", text);
}

void run_law_cup(const LawArgs& a) {
  if (a.moments < 0) fp::fail(fp::ErrorKind::SchemaError, "need --moments N");
  fp::Rational da = to_rational(a.delta_a);
  fp::Rational db = to_rational(a.delta_b);
  auto via_s = fp::cup_moments_via_s(da, db, a.moments);
  auto enumerated = fp::fc_cup_moments(da, db, a.moments);
  const bool agree = via_s == enumerated;
  ordered_json j;
  j["mode"] = "exact";
  j["truncation"] = a.moments;
  j["delta_a"] = fp::to_string(da);
  j["delta_b"] = fp::to_string(db);
  ordered_json r1 = ordered_json::array(), r2 = ordered_json::array();
  for (auto& v : via_s) r1.push_back(fp::to_string(v));
  for (auto& v : enumerated) r2.push_back(fp::to_string(v));
  j["s_route"] = r1;
  j["enumeration"] = r2;
  j["agreement"] = agree ? "exact" : "DIVERGENT";
  std::string text = "mode: exact\ntruncation: N=" + std::to_string(a.moments) + "\n";
  text += "s-route: " + join_moments(via_s) + "\n";
  text += "enumeration: " + join_moments(enumerated) + "\n";
  text += std::string("agreement: ") + (agree ? "exact" : "DIVERGENT") + "\n";
  emit(j, a.format == "json", text);
}

void add_format(CLI::App* cmd, std::string& target) {
  cmd->add_option("--format", target, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar diagram enumeration, graph factor calculus, and spectral laws"};
  app.require_subcommand(1);

  DiagramArgs da;
  auto* diagrams = app.add_subcommand("diagrams", "Diagram enumeration and Gram data");
  diagrams->require_subcommand(1);
  auto* d_count = diagrams->add_subcommand("count", "Count planar color-matched pairings");
  auto* d_list = diagrams->add_subcommand("list", "List planar color-matched pairings");
  auto* d_gram = diagrams->add_subcommand("gram", "Gram matrix of the pairing basis");
  auto* d_psd = diagrams->add_subcommand("psd", "Positivity check of the Gram matrix");
  for (auto* c : {d_count, d_list, d_gram, d_psd}) {
    c->add_option("--word", da.word, "Boundary color word")->required();
    c->add_option("--npm", da.npm, "Initial region (N, P, or M)");
  }
  for (auto* c : {d_gram, d_psd})
    c->add_option("--delta", da.delta, "Loop value c=number (repeatable)");
  for (auto* c : {d_list, d_gram, d_psd}) add_format(c, da.format);
  d_count->callback([&] { run_diagrams_count(da); });
  d_list->callback([&] { run_diagrams_list(da); });
  d_gram->callback([&] { run_diagrams_gram(da); });
  d_psd->callback([&] { run_diagrams_psd(da); });

  GraphArgs ga;
  auto* graph = app.add_subcommand("graph", "Weighted-graph factor analysis");
  graph->require_subcommand(1);
  auto* g_analyze = graph->add_subcommand("analyze", "Decomposition, t, B, free-dimension routes");
  auto* g_cutdown = graph->add_subcommand("cutdown", "Compressed parameter at a vertex");
  auto* g_pf = graph->add_subcommand("pf", "Perron-Frobenius eigenvalue and weights");
  auto* g_trunc = graph->add_subcommand("truncate", "Truncated-family parameter sequence");
  for (auto* c : {g_analyze, g_cutdown, g_pf})
    c->add_option("--graph", ga.file, "Graph JSON file")->required();
  for (auto* c : {g_analyze, g_cutdown})
    c->add_option("--exact", ga.exact, "Exact field tag, e.g. sqrt2");
  g_cutdown->add_option("--vertex", ga.vertex, "Vertex id")->required();
  g_trunc->add_option("--family", ga.family, "Family name (a_inf)");
  g_trunc->add_option("--delta", ga.delta, "Loop parameter");
  g_trunc->add_option("--kmax", ga.kmax, "Last truncation depth");
  for (auto* c : {g_analyze, g_cutdown, g_pf, g_trunc}) add_format(c, ga.format);
  g_analyze->callback([&] { run_graph_analyze(ga); });
  g_cutdown->callback([&] { run_graph_cutdown(ga); });
  g_pf->callback([&] { run_graph_pf(ga); });
  g_trunc->callback([&] { run_graph_truncate(ga); });

  ParamArgs pa;
  auto* param = app.add_subcommand("param", "Closed-form parameter formulas");
  param->require_subcommand(1);
  auto* p_gjs = param->add_subcommand("gjs", "One-color parameter 1 + 2 delta^(-2k) (delta-1) I");
  p_gjs->add_option("--delta", pa.delta, "Loop parameter")->required();
  p_gjs->add_option("--index", pa.index, "Global index I")->required();
  p_gjs->add_option("--k", pa.k, "Depth")->required();
  auto* p_fc = param->add_subcommand("fc", "Two-color parameter 1 + 2 I delta_alpha^(-2) (delta_a + delta_b - 2)");
  p_fc->add_option("--delta-a", pa.delta_a, "First loop parameter")->required();
  p_fc->add_option("--delta-b", pa.delta_b, "Second loop parameter")->required();
  p_fc->add_option("--index", pa.index, "Global index I")->required();
  p_fc->add_option("--delta-alpha", pa.delta_alpha, "Side-word weight")->required();
  for (auto* c : {p_gjs, p_fc}) {
    c->add_option("--graph", pa.graph, "Graph JSON file for the engine cross-check");
    add_format(c, pa.format);
  }
  p_gjs->callback([&] { run_param_gjs(pa); });
  p_fc->callback([&] { run_param_fc(pa); });

  LawArgs la;
  auto* law = app.add_subcommand("law", "Spectral laws");
  law->require_subcommand(1);
  auto* l_poisson = law->add_subcommand("poisson", "Free Poisson moments and density");
  l_poisson->add_option("--alpha", la.alpha, "Rate");
  l_poisson->add_option("--moments", la.moments, "Moment order");
  l_poisson->add_flag("--density", la.density, "Write density CSV");
  l_poisson->add_option("--xmin", la.xmin, "Grid start");
  l_poisson->add_option("--xmax", la.xmax, "Grid end");
  l_poisson->add_option("--step", la.step, "Grid step");
  l_poisson->add_option("--csv", la.csv, "CSV output path");
  auto* l_cup = law->add_subcommand("cup", "Two-color cup moments, both routes");
  l_cup->add_option("--delta-a", la.delta_a, "First loop parameter");
  l_cup->add_option("--delta-b", la.delta_b, "Second loop parameter");
  l_cup->add_option("--moments", la.moments, "Moment order")->required();
  for (auto* c : {l_poisson, l_cup}) add_format(c, la.format);
  l_poisson->callback([&] { run_law_poisson(la); });
  l_cup->callback([&] { run_law_cup(la); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const fp::Error& e) {
    std::cerr << e.what() << "\n";
    return e.numeric() ? 3 : 2;
  }
  return 0;
}
