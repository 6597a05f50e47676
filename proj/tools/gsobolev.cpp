#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gsobolev/bench.hpp"
#include "gsobolev/error.hpp"
#include "gsobolev/graph.hpp"
#include "gsobolev/kernel.hpp"
#include "gsobolev/measure.hpp"
#include "gsobolev/metric.hpp"
#include "gsobolev/synth.hpp"
#include "gsobolev/verify.hpp"

namespace gs = gsobolev;
using json = nlohmann::json;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

// Bad flags, unreadable paths and out-of-range parameters.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(gs::ErrorKind kind) {
  switch (kind) {
    case gs::ErrorKind::InvalidExponent:
    case gs::ErrorKind::InvalidBandwidth:
    case gs::ErrorKind::InvalidArgument:
    case gs::ErrorKind::RootMismatch:
      return kExitConfig;
    default:
      return kExitData;
  }
}

struct RunConfig {
  std::string graph_path;
  std::string measures_path;
  std::string root = "0";
  std::string p = "1";
  std::string variant = "sipm";
  std::string kernel;
  std::optional<double> t;
  std::string pairs = "all";
  std::string out;
  std::optional<unsigned> threads;
  std::uint64_t seed = 42;
  bool allow_outside_range = false;
  bool normalize = false;
  // verify
  std::string suite = "all";
  // bench / synth
  std::vector<std::size_t> sizes{100};
  std::string family = "log";
  std::size_t count = 50;
  std::size_t support = 5;
  std::size_t repeats = 5;
  std::size_t nodes = 100;
  std::string points_path;
  std::string measures_out;
};

struct RootSpec {
  bool sliced = false;
  gs::NodeId node = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

unsigned resolve_threads(const RunConfig& cfg) {
  if (cfg.threads) {
    if (*cfg.threads < 1) throw ConfigError("--threads must be >= 1");
    return *cfg.threads;
  }
  if (const char* env = std::getenv("GSOBOLEV_THREADS")) {
    try {
      std::size_t used = 0;
      const long v = std::stol(env, &used);
      if (used != std::string(env).size() || v < 1) throw std::invalid_argument(env);
      return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw ConfigError(std::string("GSOBOLEV_THREADS must be a positive integer, got '") + env + "'");
    }
  }
  return 1;
}

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return gs::kInfiniteExponent;
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("--p must be a decimal >= 1 or 'inf', got '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("--p must be a decimal >= 1 or 'inf', got '" + text + "'");
  gs::check_exponent(p, true);
  return p;
}

gs::Variant parse_variant(const std::string& text) {
  if (text == "sipm") return gs::Variant::RegularizedSobolevIpm;
  if (text == "st") return gs::Variant::SobolevTransport;
  throw ConfigError("--variant must be 'sipm' or 'st', got '" + text + "'");
}

std::uint64_t parse_unsigned(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  try {
    if (!text.empty() && text[0] != '-') {
      const auto v = std::stoull(text, &used);
      if (used == text.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError(what + " must be a nonnegative integer, got '" + text + "'");
}

RootSpec parse_root(const std::string& text, std::size_t node_count) {
  RootSpec spec;
  if (text.rfind("sliced:", 0) == 0) {
    const auto rest = text.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw ConfigError("--root sliced form is 'sliced:K:seed'");
    spec.sliced = true;
    spec.count = parse_unsigned(rest.substr(0, colon), "sliced root count");
    spec.seed = parse_unsigned(rest.substr(colon + 1), "sliced root seed");
    if (spec.count < 1 || spec.count > node_count) {
      throw ConfigError("sliced root count must be in [1, " + std::to_string(node_count) + "]");
    }
    return spec;
  }
  const auto v = parse_unsigned(text, "--root");
  if (v >= node_count) {
    throw ConfigError("--root " + text + " outside graph with " + std::to_string(node_count) + " nodes");
  }
  spec.node = static_cast<gs::NodeId>(v);
  return spec;
}

std::vector<std::pair<std::size_t, std::size_t>> load_pairs(const std::string& spec, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (spec == "all") {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    return pairs;
  }
  std::ifstream in(spec);
  if (!in) throw ConfigError("cannot open pairs file '" + spec + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line) {
      if (c == ',' || c == '\t') c = ' ';
    }
    std::istringstream fields(line);
    long long i = -1, j = -1;
    std::string extra;
    if (!(fields >> i >> j) || (fields >> extra)) {
      throw gs::Error(gs::ErrorKind::ParseError, "pairs file line " + std::to_string(line_no) + ": expected 'i,j'");
    }
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= n || static_cast<std::size_t>(j) >= n) {
      throw gs::Error(gs::ErrorKind::NodeOutOfRange,
                      "pairs file line " + std::to_string(line_no) + ": measure index out of range");
    }
    pairs.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

// Runs `body` with `path` opened for writing, or stdout when empty.
template <typename Body>
void with_output(const std::string& path, Body&& body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  body(out);
}

std::string sidecar(const std::string& out) { return out + ".json"; }

struct Loaded {
  gs::Graph graph;
  std::vector<gs::DiscreteMeasure> measures;
};

Loaded load_inputs(const RunConfig& cfg) {
  if (cfg.graph_path.empty()) throw ConfigError("--graph is required");
  if (cfg.measures_path.empty()) throw ConfigError("--measures is required");
  auto g = gs::load_graph(cfg.graph_path);
  auto ms = gs::load_measures(cfg.measures_path, g, cfg.normalize);
  return {std::move(g), std::move(ms)};
}

void report_ties(const gs::RootedStructure& rs) {
  for (const auto& w : rs.warnings) {
    std::cerr << "warning: root " << rs.root << ": node " << w.node << " has equal-length paths via node "
              << w.chosen << " and node " << w.rejected << "; keeping " << w.chosen << '\n';
  }
}

// Distances for the requested pairs, either at one root or averaged over sampled roots.
struct DistanceRun {
  std::vector<double> values;
  std::vector<gs::NodeId> roots;
  double preprocessing_ms = 0.0;
  double distance_ms = 0.0;
  std::size_t tie_warnings = 0;
};

DistanceRun compute_distances(const gs::Graph& g, const std::vector<gs::DiscreteMeasure>& ms,
                              const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                              const RootSpec& root, double p, gs::Variant variant, unsigned threads) {
  gs::check_exponent(p, variant == gs::Variant::RegularizedSobolevIpm);
  DistanceRun run;
  run.roots = root.sliced ? gs::sample_roots(g.node_count(), root.count, root.seed) : std::vector{root.node};
  const gs::PreparedGraph pg(g);
  auto start = Clock::now();
  for (gs::NodeId r : run.roots) {
    const auto ctx = pg.at(r);
    report_ties(ctx->structure);
    run.tie_warnings += ctx->structure.warnings.size();
    if (variant == gs::Variant::RegularizedSobolevIpm && !std::isinf(p)) gs::beta_weights(ctx->prep, p);
  }
  run.preprocessing_ms = ms_since(start);

  start = Clock::now();
  run.values.assign(pairs.size(), 0.0);
  for (gs::NodeId r : run.roots) {
    const auto ctx = pg.at(r);
    std::vector<gs::SparseEdgeVector> vectors(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) vectors[i] = gs::gamma_mass(ctx->structure, ms[i]);
    const gs::DistanceEvaluator eval(ctx->prep, p, variant);
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(pairs.size())));
    std::vector<double> here(pairs.size());
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t k = w; k < pairs.size(); k += workers) {
            here[k] = eval(vectors[pairs[k].first], vectors[pairs[k].second]);
          }
        });
      }
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) run.values[k] += here[k];
  }
  const double count = static_cast<double>(run.roots.size());
  if (count > 1) {
    for (double& v : run.values) v /= count;
  }
  run.distance_ms = ms_since(start);
  return run;
}

}  // namespace

namespace {

json root_json(const RootSpec& root, const std::vector<gs::NodeId>& roots) {
  json j;
  j["sliced"] = root.sliced;
  j["roots"] = roots;
  if (root.sliced) j["seed"] = root.seed;
  return j;
}

json exponent_json(double p) { return std::isinf(p) ? json("inf") : json(p); }

int cmd_distance(const RunConfig& cfg) {
  const double p = parse_exponent(cfg.p);
  const auto variant = parse_variant(cfg.variant);
  const unsigned threads = resolve_threads(cfg);
  const auto in = load_inputs(cfg);
  const auto root = parse_root(cfg.root, in.graph.node_count());
  const auto pairs = load_pairs(cfg.pairs, in.measures.size());
  const auto run = compute_distances(in.graph, in.measures, pairs, root, p, variant, threads);

  with_output(cfg.out, [&](std::ostream& os) {
    os << "i,j,distance\n" << std::setprecision(17);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      os << pairs[k].first << ',' << pairs[k].second << ',' << run.values[k] << '\n';
    }
  });
  if (!cfg.out.empty()) {
    write_json(sidecar(cfg.out), {{"command", "distance"},
                                  {"p", exponent_json(p)},
                                  {"variant", cfg.variant},
                                  {"root", root_json(root, run.roots)},
                                  {"measures", in.measures.size()},
                                  {"pairs", pairs.size()},
                                  {"nodes", in.graph.node_count()},
                                  {"edges", in.graph.edge_count()},
                                  {"tie_warnings", run.tie_warnings},
                                  {"threads", threads},
                                  {"preprocessing_ms", run.preprocessing_ms},
                                  {"distance_ms", run.distance_ms}});
  }
  return 0;
}

int cmd_gram(const RunConfig& cfg) {
  const double p = parse_exponent(cfg.p);
  const auto variant = parse_variant(cfg.variant);
  if (cfg.kernel.empty()) throw ConfigError("--kernel (exp|exp-pow) is required");
  if (!cfg.t) throw ConfigError("--t is required");
  gs::KernelForm form;
  if (cfg.kernel == "exp") {
    form = gs::KernelForm::ExpNegTD;
  } else if (cfg.kernel == "exp-pow") {
    form = gs::KernelForm::ExpNegTDPowP;
  } else {
    throw ConfigError("--kernel must be 'exp' or 'exp-pow', got '" + cfg.kernel + "'");
  }
  if (!gs::in_definite_range(p) && !cfg.allow_outside_range) {
    throw ConfigError("--p " + cfg.p +
                      " is outside [1, 2] where the kernel is guaranteed positive definite; pass "
                      "--allow-outside-range to compute it anyway");
  }
  if (!(*cfg.t > 0.0) || !std::isfinite(*cfg.t)) throw ConfigError("--t must be positive");
  const unsigned threads = resolve_threads(cfg);
  const auto in = load_inputs(cfg);
  const auto root = parse_root(cfg.root, in.graph.node_count());
  const auto pairs = load_pairs("all", in.measures.size());
  const auto run = compute_distances(in.graph, in.measures, pairs, root, p, variant, threads);

  const auto start = Clock::now();
  gs::SymmetricMatrix d(in.measures.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) d.set(pairs[k].first, pairs[k].second, run.values[k]);
  const auto gram = gs::gram_matrix(d, {p, *cfg.t, form});
  const double gram_ms = ms_since(start);
  const double lo = gs::min_eigenvalue(gram);
  const auto nd = gs::check_negative_definite(d, p, 200, cfg.seed);

  with_output(cfg.out, [&](std::ostream& os) { gs::write_matrix_csv(os, gram); });
  if (!cfg.out.empty()) {
    write_json(sidecar(cfg.out), {{"command", "gram"},
                                  {"p", exponent_json(p)},
                                  {"variant", cfg.variant},
                                  {"kernel", cfg.kernel},
                                  {"t", *cfg.t},
                                  {"root", root_json(root, run.roots)},
                                  {"dim", gram.dim()},
                                  {"min_eigenvalue", lo},
                                  {"psd", gs::is_psd(gram)},
                                  {"nd_violations", nd.violations},
                                  {"nd_trials", nd.trials},
                                  {"min_centered_eigenvalue", nd.min_centered_eigenvalue},
                                  {"outside_guaranteed_range", nd.outside_guaranteed_range},
                                  {"preprocessing_ms", run.preprocessing_ms},
                                  {"distance_ms", run.distance_ms},
                                  {"gram_ms", gram_ms}});
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  gs::VerifyOptions opt;
  opt.seed = cfg.seed;
  const auto reports = gs::run_suites(cfg.suite, opt);
  json doc;
  doc["seed"] = cfg.seed;
  doc["suites"] = json::array();
  bool ok = true;
  for (const auto& r : reports) {
    json suite{{"suite", r.suite}, {"passed", r.passed()}, {"seconds", r.seconds}, {"checks", json::array()}};
    std::cout << "[" << r.suite << "] " << (r.passed() ? "pass" : "FAIL") << " (" << std::fixed
              << std::setprecision(2) << r.seconds << " s)\n";
    std::cout.unsetf(std::ios::floatfield);
    for (const auto& c : r.checks) {
      json cj{{"name", c.name},         {"checks", c.checks},   {"violations", c.violations},
              {"worst", c.worst},       {"tolerance", c.tolerance}, {"passed", c.passed()}};
      if (c.failing_seed) cj["failing_seed"] = *c.failing_seed;
      suite["checks"].push_back(cj);
      std::cout << "  " << (c.passed() ? "ok   " : "FAIL ") << c.name << ": " << c.checks << " checks, "
                << c.violations << " violations, worst " << std::setprecision(3) << c.worst << '\n';
      if (!c.passed()) {
        std::cerr << "verify failure in " << r.suite << " / " << c.name << ": offending seed " << *c.failing_seed
                  << '\n';
      }
    }
    ok = ok && r.passed();
    doc["suites"].push_back(suite);
  }
  doc["passed"] = ok;
  if (!cfg.out.empty()) write_json(cfg.out, doc);
  return ok ? 0 : kExitVerifyFailed;
}

int cmd_bench(const RunConfig& cfg) {
  const double p = parse_exponent(cfg.p);
  if (std::isinf(p)) throw ConfigError("bench needs a finite --p");
  std::vector<gs::GraphFamily> families;
  if (cfg.family == "both") {
    families = {gs::GraphFamily::Log, gs::GraphFamily::Sqrt};
  } else {
    families = {gs::parse_graph_family(cfg.family)};
  }
  std::vector<gs::BenchRow> rows;
  std::cout << gs::bench_csv_header() << '\n';
  for (std::size_t m : cfg.sizes) {
    for (auto family : families) {
      gs::BenchConfig bc;
      bc.nodes = m;
      bc.family = family;
      bc.measures = cfg.count;
      bc.support = cfg.support;
      bc.p = p;
      bc.seed = cfg.seed;
      bc.repeats = cfg.repeats;
      rows.push_back(gs::run_bench(bc));
      std::cout << gs::bench_csv_row(rows.back()) << std::endl;
    }
  }
  if (!cfg.out.empty()) {
    with_output(cfg.out, [&](std::ostream& os) {
      os << gs::bench_csv_header() << '\n';
      for (const auto& r : rows) os << gs::bench_csv_row(r) << '\n';
    });
    json doc{{"command", "bench"}, {"p", p}, {"seed", cfg.seed}, {"rows", json::array()}};
    for (const auto& r : rows) {
      json rj{{"M", r.nodes},
              {"family", r.family},
              {"edges", r.edges},
              {"preprocessing_ms", r.preprocessing_ms},
              {"gamma_ns", r.gamma_ns},
              {"per_pair_ns_sipm", r.per_pair_ns_sipm},
              {"per_pair_ns_st", r.per_pair_ns_st},
              {"per_pair_ms_lp", r.per_pair_ms_lp ? json(*r.per_pair_ms_lp) : json(nullptr)},
              {"mean_sparse_edges", r.mean_sparse_edges},
              {"pairs", r.pairs},
              {"cached_roots", r.cached_roots}};
      doc["rows"].push_back(rj);
    }
    // Per-pair time against |E_mu,nu| and |E| between the smallest and largest instance.
    if (rows.size() >= 2) {
      const auto& a = rows.front();
      const auto& b = rows.back();
      doc["scaling"] = {{"edge_ratio", static_cast<double>(b.edges) / static_cast<double>(a.edges)},
                        {"sparse_edge_ratio", b.mean_sparse_edges / a.mean_sparse_edges},
                        {"per_pair_time_ratio", b.per_pair_ns_sipm / a.per_pair_ns_sipm}};
    }
    write_json(sidecar(cfg.out), doc);
  }
  return 0;
}

int cmd_synth(const RunConfig& cfg) {
  if (cfg.out.empty()) throw ConfigError("--out (graph file) is required");
  const auto family = gs::parse_graph_family(cfg.family);
  gs::PointCloud cloud = cfg.points_path.empty() ? gs::random_point_cloud(2 * cfg.nodes, 8, cfg.seed)
                                                 : gs::load_point_cloud(cfg.points_path);
  const auto clusters = gs::farthest_point_clustering(cloud, cfg.nodes, cfg.seed + 1);
  const auto synth = gs::build_random_graph(clusters.centroids, family, cfg.seed + 2);
  for (const auto& w : synth.warnings) std::cerr << "warning: " << w << '\n';
  with_output(cfg.out, [&](std::ostream& os) { gs::write_graph(os, synth.graph); });
  std::size_t measure_count = 0;
  if (!cfg.measures_out.empty()) {
    const auto ms = gs::random_measures(synth.graph, cfg.count, cfg.support, cfg.seed + 3);
    measure_count = ms.size();
    with_output(cfg.measures_out, [&](std::ostream& os) { gs::write_measures(os, ms); });
  }
  write_json(sidecar(cfg.out), {{"command", "synth"},
                                {"family", gs::to_string(family)},
                                {"points", cloud.size()},
                                {"nodes", synth.graph.node_count()},
                                {"edges", synth.graph.edge_count()},
                                {"sampled_edges", synth.sampled_edges},
                                {"connecting_edges", synth.connecting_edges},
                                {"measures", measure_count},
                                {"seed", cfg.seed},
                                {"warnings", synth.warnings}});
  return 0;
}

void add_io(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--graph", cfg.graph_path, "graph file ('n m' header, then 'u v w' lines)");
  sub->add_option("--measures", cfg.measures_path, "measures file (id<TAB>node<TAB>mass...)");
  sub->add_option("--root", cfg.root, "root node id or sliced:K:seed");
  sub->add_option("--p", cfg.p, "exponent >= 1 or inf");
  sub->add_option("--variant", cfg.variant, "sipm | st");
  sub->add_option("--threads", cfg.threads, "worker threads (default: GSOBOLEV_THREADS or 1)");
  sub->add_flag("--normalize", cfg.normalize, "rescale measure masses to sum to one");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Regularized Sobolev IPM distances and kernels between measures on graphs"};
  app.require_subcommand(1);

  auto* distance = app.add_subcommand("distance", "pairwise distances as CSV 'i,j,distance'");
  add_io(distance, cfg);
  distance->add_option("--pairs", cfg.pairs, "all | file of 'i,j' lines");
  distance->add_option("--out", cfg.out, "output CSV (default stdout)");
  distance->add_option("--seed", cfg.seed);

  auto* gram = app.add_subcommand("gram", "kernel Gram matrix as CSV");
  add_io(gram, cfg);
  gram->add_option("--kernel", cfg.kernel, "exp | exp-pow");
  gram->add_option("--t", cfg.t, "bandwidth > 0");
  gram->add_option("--out", cfg.out, "output CSV (default stdout)");
  gram->add_option("--seed", cfg.seed, "seed for the randomized definiteness probe");
  gram->add_flag("--allow-outside-range", cfg.allow_outside_range, "permit p outside [1, 2]");

  auto* verify = app.add_subcommand("verify", "seeded property suites");
  verify->add_option("--suite", cfg.suite, "metric | bounds | tree | definiteness | oracle | sliced | all");
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--out", cfg.out, "JSON report path");

  auto* bench = app.add_subcommand("bench", "timing table on synthetic clustered graphs");
  bench->add_option("--sizes", cfg.sizes, "node counts M")->delimiter(',');
  bench->add_option("--family", cfg.family, "log | sqrt | both");
  bench->add_option("--count", cfg.count, "measures per instance");
  bench->add_option("--support", cfg.support, "support size per measure");
  bench->add_option("--repeats", cfg.repeats, "timing repeats (minimum is reported)");
  bench->add_option("--p", cfg.p, "exponent >= 1");
  bench->add_option("--seed", cfg.seed);
  bench->add_option("--out", cfg.out, "CSV path; a JSON sidecar is written next to it");

  auto* synth = app.add_subcommand("synth", "clustered random graph plus random measures");
  synth->add_option("--nodes", cfg.nodes, "number of clusters M");
  synth->add_option("--family", cfg.family, "log | sqrt");
  synth->add_option("--points", cfg.points_path, "point cloud file ('n d' header); default 2M random points");
  synth->add_option("--count", cfg.count, "measures to generate");
  synth->add_option("--support", cfg.support, "support size per measure");
  synth->add_option("--seed", cfg.seed);
  synth->add_option("--out", cfg.out, "graph output path");
  synth->add_option("--measures-out", cfg.measures_out, "measures output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*distance) return cmd_distance(cfg);
    if (*gram) return cmd_gram(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*bench) return cmd_bench(cfg);
    if (*synth) return cmd_synth(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const gs::Error& e) {
    const int code = exit_code_for(e.kind());
    std::cerr << (code == kExitConfig ? "config error: " : "data error: ") << e.what() << '\n';
    return code;
  }
  return kExitConfig;
}
