// resmatch: residual matching spectra, hardness gadgets and benchmarks.
//
//   resmatch compute   --input g.graph [--f const:1 --k 3] [--trials 8]
//   resmatch reduce    --input f.cnf --variant L --output g.graph
//   resmatch verify    --input g.graph --certificate g.graph.cert.json --cnf f.cnf --exhaustive
//   resmatch bench     --family random-bipartite --vertices 10 --trials 100 --output out.csv
//   resmatch calibrate --variant L --epsilon 1/176
//
// Exit status: 0 when every check passed and nothing was truncated, 1 when a
// check failed or an enumeration was truncated, 2 on bad input.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <unistd.h>

#include "resmatch/color_subgraph.hpp"
#include "resmatch/graph.hpp"
#include "resmatch/matching.hpp"
#include "resmatch/reduction.hpp"
#include "resmatch/report.hpp"
#include "resmatch/spectrum.hpp"

using namespace resmatch;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;

struct RunConfig {
  std::string input;
  std::string output;
  std::string certificate;
  std::string cnf;
  std::string variant = "L";
  std::string tolerance;
  std::string epsilon;
  std::string c;
  std::string family = "random";
  std::uint64_t seed = 0;
  std::size_t cap = kDefaultEnumerationCap;
  int k = -1;
  int trials = 0;
  int seeds = 10;
  int vertices = 10;
  bool exhaustive = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Writes to a sibling temporary and renames it over the target.
void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, target);
}

void emit(const std::string& output, const std::string& content) {
  if (output.empty() || output == "-")
    std::cout << content;
  else
    write_atomically(output, content);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Graph load_graph(const std::string& path) {
  try {
    return parse_graph_file(read_file(path));
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

CnfInstance load_cnf(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_dimacs(text);
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  } catch (const CnfError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, int count) {
  std::vector<std::uint64_t> seeds;
  for (int t = 0; t < count; ++t) seeds.push_back(first + static_cast<std::uint64_t>(t));
  return seeds;
}

// ------------------------------------------------------------------ compute

int cmd_compute(const RunConfig& cfg) {
  Graph g = load_graph(cfg.input);
  bool failed = false;

  Json report;
  report["n"] = g.vertex_count();
  report["m"] = g.edge_count();
  SpectrumReport s = spectrum(g, cfg.cap);
  const Json spectrum_json = to_json(s);
  for (auto it = spectrum_json.begin(); it != spectrum_json.end(); ++it) report[it.key()] = *it;
  report["degree"] = to_json(degree_profile(g));
  auto b = bipartition(g);
  report["bipartite"] = b.has_value();
  report["connected"] = is_connected(g);
  if (b) {
    ColorableResult two = nu2_bipartite(g, *b);
    report["nu2"] = two.size;
    report["nu2_classes"] = to_json(two);
    report["L_upper_bound"] = upper_bound_L(g, *b);
  } else {
    report["nu2"] = nullptr;
    report["nu2_classes"] = nullptr;
    report["L_upper_bound"] = nullptr;
  }

  if (s.truncated) {
    failed = true;
    report["bounds"] = nullptr;
  } else {
    BoundReport bounds = check_bounds(s, g.vertex_count());
    report["bounds"] = to_json(bounds);
    failed = failed || !bounds.holds();
    if (cfg.trials > 0) {
      ApproxReport approx = approx_trial(g, s, seed_range(cfg.seed, cfg.trials));
      report["approx"] = to_json(approx);
      failed = failed || !approx.ratios_within;
    }
  }

  if (!cfg.tolerance.empty()) {
    if (cfg.k < 0) throw std::invalid_argument("--f needs --k");
    ToleranceFunction f = ToleranceFunction::parse(cfg.tolerance);
    Problem1Result r = decide_problem1(g, cfg.k, f, cfg.cap);
    Json p = to_json(r);
    p["k"] = cfg.k;
    p["f"] = f.describe();
    report["problem1"] = p;
    failed = failed || r.answer == Problem1Result::Answer::unknown;
  }

  emit(cfg.output, dump(report));
  return failed ? kExitCheckFailed : kExitOk;
}

// ------------------------------------------------------------------- reduce

int cmd_reduce(const RunConfig& cfg) {
  if (cfg.output.empty() || cfg.output == "-") throw std::invalid_argument("reduce needs --output <graph file>");
  CnfInstance cnf = load_cnf(cfg.input);
  ReductionArtifact a = build_artifact(cnf, parse_variant(cfg.variant));
  VerifyOptions options;
  options.exhaustive = cfg.exhaustive;
  options.spectrum_cap = cfg.cap;
  Certificate cert = verify_artifact(a, cnf, options);

  std::string certificate = cfg.certificate.empty() ? cfg.output + ".cert.json" : cfg.certificate;
  write_atomically(cfg.output, emit_graph_file(a.graph));
  write_atomically(certificate, dump(to_json(cert)));
  for (const auto& d : cert.discrepancies) std::cerr << "discrepancy: " << d << '\n';
  std::cout << "wrote " << cfg.output << " (" << a.graph.vertex_count() << " vertices, " << a.graph.edge_count()
            << " edges) and " << certificate << (cert.ok() ? "" : " with discrepancies") << '\n';
  return cert.ok() ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------------- verify

template <typename T>
void compare_field(std::vector<std::string>& out, const std::string& name, const T& recorded, const T& actual) {
  if (recorded == actual) return;
  std::ostringstream msg;
  msg << "certificate field " << name << ": recorded " << recorded << ", recomputed " << actual;
  out.push_back(msg.str());
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.cnf.empty()) throw std::invalid_argument("verify needs --cnf");
  Graph file_graph = load_graph(cfg.input);
  CnfInstance cnf = load_cnf(cfg.cnf);
  std::string certificate_path = cfg.certificate.empty() ? cfg.input + ".cert.json" : cfg.certificate;
  CertificateSummary recorded;
  try {
    recorded = certificate_summary(Json::parse(read_file(certificate_path)));
  } catch (const Json::exception& e) {
    throw std::runtime_error(certificate_path + ": " + e.what());
  }

  ReductionArtifact a = build_artifact(cnf, parse_variant(recorded.variant));
  std::vector<std::string> discrepancies;

  std::set<Edge> built(a.graph.edges().begin(), a.graph.edges().end());
  std::set<Edge> found(file_graph.edges().begin(), file_graph.edges().end());
  std::size_t missing = 0, extra = 0;
  for (const Edge& e : built) missing += !found.count(e);
  for (const Edge& e : found) extra += !built.count(e);
  if (file_graph.vertex_count() != a.graph.vertex_count())
    discrepancies.push_back("graph file has " + std::to_string(file_graph.vertex_count()) + " vertices, construction has " +
                            std::to_string(a.graph.vertex_count()));
  if (missing || extra)
    discrepancies.push_back("graph file differs from the construction: " + std::to_string(missing) + " edges missing, " +
                            std::to_string(extra) + " extra");

  // Every check below runs on the graph as found on disk.
  a.graph = file_graph;
  VerifyOptions options;
  options.exhaustive = cfg.exhaustive && file_graph.vertex_count() == a.expected.vertices;
  options.spectrum_cap = cfg.cap;
  Certificate cert = verify_artifact(a, cnf, options);
  discrepancies.insert(discrepancies.end(), cert.discrepancies.begin(), cert.discrepancies.end());

  compare_field(discrepancies, "m", recorded.m, cert.m);
  compare_field(discrepancies, "V", recorded.vertices, cert.vertices);
  compare_field(discrepancies, "E", recorded.edges, cert.edges);
  compare_field(discrepancies, "expectedE", recorded.expected_edges, cert.expected_edges);
  compare_field(discrepancies, "maxDeg", recorded.max_degree, cert.max_degree);
  compare_field(discrepancies, "nu", recorded.nu, cert.nu);
  compare_field(discrepancies, "kParam", recorded.k_param.value_or(-1), cert.k_param.value_or(-1));

  Json report = to_json(cert);
  report["discrepancies"] = discrepancies;
  report["ok"] = discrepancies.empty();
  emit(cfg.output, dump(report));
  for (const auto& d : discrepancies) std::cerr << "discrepancy: " << d << '\n';
  return discrepancies.empty() ? kExitOk : kExitCheckFailed;
}

// -------------------------------------------------------------------- bench

Graph family_member(const RunConfig& cfg, int index, std::mt19937_64& rng) {
  const int n = cfg.vertices;
  std::vector<std::pair<int, int>> pairs;
  if (cfg.family == "path") {
    for (int v = 1; v < n; ++v) pairs.emplace_back(v, v + 1);
    return build_graph(n, pairs).graph;
  }
  if (cfg.family == "even-cycles") {
    const int len = 2 * (index + 2);
    for (int v = 1; v <= len; ++v) pairs.emplace_back(v, v % len + 1);
    return build_graph(len, pairs).graph;
  }
  std::bernoulli_distribution coin(0.3);
  if (cfg.family == "random") {
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b)
        if (coin(rng)) pairs.emplace_back(a, b);
    return build_graph(n, pairs).graph;
  }
  if (cfg.family == "random-bipartite") {
    const int left = n / 2;
    for (int a = 1; a <= left; ++a)
      for (int b = left + 1; b <= n; ++b)
        if (coin(rng)) pairs.emplace_back(a, b);
    return build_graph(n, pairs).graph;
  }
  throw std::invalid_argument("unknown family '" + cfg.family + "'");
}

std::string ratio_cell(const std::optional<Rational>& r) { return r ? to_string(*r) : ""; }

int cmd_bench(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const auto seeds = seed_range(1, cfg.seeds);
  std::ostringstream csv;
  csv << "graph,n,m,nu,ell,L,seed,residual,r_ell,r_L,bounds_ok,truncated\n";
  std::size_t violations = 0, truncations = 0, undefined = 0;
  std::set<Rational> observed_ell, observed_l;

  for (int index = 0; index < cfg.trials; ++index) {
    Graph g = family_member(cfg, index, rng);
    SpectrumReport s = spectrum(g, cfg.cap);
    std::string prefix = std::to_string(index) + "," + std::to_string(g.vertex_count()) + "," +
                         std::to_string(g.edge_count()) + "," + std::to_string(s.nu) + ",";
    if (s.truncated) {
      ++truncations;
      csv << prefix << ",,,,,,,1\n";
      continue;
    }
    BoundReport bounds = check_bounds(s, g.vertex_count());
    ApproxReport approx = approx_trial(g, s, seeds);
    bool ok = bounds.holds() && approx.ratios_within;
    violations += !ok;
    undefined += approx.undefined_ratio_trials;
    for (const ApproxTrial& t : approx.trials) {
      if (t.ratio_ell) observed_ell.insert(*t.ratio_ell);
      if (t.ratio_big_l) observed_l.insert(*t.ratio_big_l);
      csv << prefix << s.ell << ',' << s.big_l << ',' << t.seed << ',' << t.residual << ',' << ratio_cell(t.ratio_ell)
          << ',' << ratio_cell(t.ratio_big_l) << ',' << (ok ? 1 : 0) << ",0\n";
    }
  }
  emit(cfg.output, csv.str());

  auto joined = [](const std::set<Rational>& values) {
    std::string out;
    for (const Rational& r : values) out += (out.empty() ? "" : " ") + to_string(r);
    return out.empty() ? "-" : out;
  };
  std::ostream& summary = (cfg.output.empty() || cfg.output == "-") ? std::cerr : std::cout;
  summary << "graphs=" << cfg.trials << " seeds=" << cfg.seeds << " violations=" << violations
          << " truncated=" << truncations << " undefined_ratios=" << undefined << " r_ell={" << joined(observed_ell)
          << "} r_L={" << joined(observed_l) << "}\n";
  return violations == 0 && truncations == 0 ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- calibrate

int cmd_calibrate(const RunConfig& cfg) {
  if (cfg.epsilon.empty()) throw std::invalid_argument("calibrate needs --epsilon");
  Rational epsilon = parse_rational(cfg.epsilon);
  Json report;
  if (cfg.c.empty()) {
    Variant variant = parse_variant(cfg.variant);
    Rational delta = calibration(variant, epsilon);
    report["variant"] = to_string(variant);
    report["epsilon"] = to_string(epsilon);
    report["delta"] = to_string(delta);
    report["delta_approx"] = to_double(delta);
  } else {
    Rational c = parse_rational(cfg.c);
    report["c"] = to_string(c);
    report["epsilon"] = to_string(epsilon);
    report["bound"] = to_string(Rational(1, 256) - epsilon / 32);
    report["c_below_bound"] = additive_threshold(c, epsilon);
  }
  emit(cfg.output, dump(report));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual matching spectra, hardness gadgets and approximation benchmarks."};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_output = [&](CLI::App* sub) { sub->add_option("--output,-o", cfg.output, "Output path (default stdout)"); };
  auto add_cap = [&](CLI::App* sub) {
    sub->add_option("--cap", cfg.cap, "Maximum matchings to enumerate")->check(CLI::PositiveNumber);
  };

  auto* compute = app.add_subcommand("compute", "Spectrum, bounds and nu2 of a graph file");
  compute->add_option("--input,-i", cfg.input, "Graph file")->required();
  add_output(compute);
  add_cap(compute);
  compute->add_option("--seed", cfg.seed, "First matcher seed for --trials");
  compute->add_option("--trials", cfg.trials, "Matcher seeds to compare against ell and L")->check(CLI::NonNegativeNumber);
  compute->add_option("--f", cfg.tolerance, "Tolerance: identity, const:C, linear:p/q, log[:p/q], sqrt[:p/q]");
  compute->add_option("--k", cfg.k, "Target residual for --f");

  auto* reduce = app.add_subcommand("reduce", "Build the reduction graph for a CNF file");
  reduce->add_option("--input,-i", cfg.input, "DIMACS CNF")->required();
  reduce->add_option("--output,-o", cfg.output, "Graph file to write")->required();
  reduce->add_option("--certificate", cfg.certificate, "Certificate path (default <output>.cert.json)");
  reduce->add_option("--variant", cfg.variant, "L or ell")->check(CLI::IsMember({"L", "ell"}));
  reduce->add_flag("--exhaustive", cfg.exhaustive, "Check every assignment");
  add_cap(reduce);

  auto* verify = app.add_subcommand("verify", "Re-check a reduction graph and its certificate");
  verify->add_option("--input,-i", cfg.input, "Graph file")->required();
  verify->add_option("--certificate", cfg.certificate, "Certificate (default <input>.cert.json)");
  verify->add_option("--cnf", cfg.cnf, "DIMACS CNF the graph was built from")->required();
  verify->add_flag("--exhaustive", cfg.exhaustive, "Check every assignment");
  add_output(verify);
  add_cap(verify);

  auto* bench = app.add_subcommand("bench", "Approximation ratios over a graph family (CSV)");
  bench->add_option("--family", cfg.family, "random, random-bipartite, path, even-cycles")
      ->check(CLI::IsMember({"random", "random-bipartite", "path", "even-cycles"}));
  bench->add_option("--vertices", cfg.vertices, "Vertices per graph")->check(CLI::Range(1, 64));
  bench->add_option("--trials", cfg.trials, "Number of graphs")->check(CLI::NonNegativeNumber);
  bench->add_option("--seeds", cfg.seeds, "Matcher seeds 1..S per graph")->check(CLI::PositiveNumber);
  bench->add_option("--seed", cfg.seed, "Family generator seed");
  add_output(bench);
  add_cap(bench);

  auto* calibrate = app.add_subcommand("calibrate", "Exact delta from epsilon, or the additive threshold test");
  calibrate->add_option("--variant", cfg.variant, "L or ell")->check(CLI::IsMember({"L", "ell"}));
  calibrate->add_option("--epsilon", cfg.epsilon, "p/q")->required();
  calibrate->add_option("--c", cfg.c, "p/q; switches to the threshold test");
  add_output(calibrate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (compute->parsed()) return cmd_compute(cfg);
    if (reduce->parsed()) return cmd_reduce(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (bench->parsed()) return cmd_bench(cfg);
    if (calibrate->parsed()) return cmd_calibrate(cfg);
  } catch (const std::exception& e) {
    std::cerr << "resmatch: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}
