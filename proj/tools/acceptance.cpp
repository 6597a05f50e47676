// Runs acceptance criteria 1-9 and prints one PASS/FAIL line per criterion.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gsobolev/bench.hpp"
#include "gsobolev/metric.hpp"
#include "gsobolev/verify.hpp"

namespace gs = gsobolev;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string summarize(const gs::SuiteReport& r) {
  std::ostringstream os;
  os.precision(3);
  std::size_t checks = 0, violations = 0;
  for (const auto& c : r.checks) {
    checks += c.checks;
    violations += c.violations;
    if (!c.passed()) os << "[failed: " << c.name << ", seed " << *c.failing_seed << ", worst " << c.worst << "] ";
  }
  os << checks << " checks, " << violations << " violations, " << r.seconds << " s";
  return os.str();
}

std::string worst_of(const gs::SuiteReport& r, const std::string& prefix) {
  std::ostringstream os;
  os.precision(3);
  for (const auto& c : r.checks) {
    if (c.name.rfind(prefix, 0) == 0) os << "worst " << c.worst << "; ";
  }
  return os.str();
}

Outcome beta_oracle(const gs::VerifyOptions& base) {
  auto opt = base;
  opt.continuum_graphs = 0;
  const auto r = gs::verify_oracle(opt);
  return {r.passed() && r.seconds < 1.0, worst_of(r, "beta") + summarize(r) + " (limit 1 s)"};
}

Outcome continuum(const gs::VerifyOptions& base) {
  auto opt = base;
  opt.beta_triples = 0;
  const auto r = gs::verify_oracle(opt);
  return {r.passed() && r.seconds < 120.0, worst_of(r, "continuum") + summarize(r) + " (limit 120 s)"};
}

Outcome tree_equality(const gs::VerifyOptions& opt) {
  const auto r = gs::verify_tree(opt);
  return {r.passed() && r.seconds < 30.0, worst_of(r, "S_1 == W1") + summarize(r) + " (limit 30 s)"};
}

Outcome suite(gs::SuiteReport (*fn)(const gs::VerifyOptions&), const gs::VerifyOptions& opt) {
  const auto r = fn(opt);
  return {r.passed(), summarize(r)};
}

Outcome sparsity(std::uint64_t seed) {
  gs::BenchConfig small;
  small.nodes = 1000;
  small.family = gs::GraphFamily::Log;
  small.measures = 50;
  small.support = 5;
  small.seed = seed;
  small.run_lp = false;
  gs::BenchConfig large = small;
  large.nodes = 10000;
  large.family = gs::GraphFamily::Sqrt;
  const auto a = gs::run_bench(small);
  const auto b = gs::run_bench(large);
  const double time_ratio = b.per_pair_ns_sipm / a.per_pair_ns_sipm;
  const double edge_ratio = static_cast<double>(b.edges) / static_cast<double>(a.edges);
  const bool once = a.cached_roots == 1 && b.cached_roots == 1;
  std::ostringstream os;
  os.precision(4);
  os << "|E| " << a.edges << " -> " << b.edges << " (x" << edge_ratio << "), per-pair " << a.per_pair_ns_sipm
     << " ns -> " << b.per_pair_ns_sipm << " ns (x" << time_ratio << "), mean |E_mu,nu| " << a.mean_sparse_edges
     << " -> " << b.mean_sparse_edges << ", roots preprocessed " << a.cached_roots << "/" << b.cached_roots;
  return {time_ratio < 2.0 && edge_ratio > 10.0 && once, os.str()};
}

Outcome speed_vs_lp(std::uint64_t seed) {
  gs::BenchConfig cfg;
  cfg.nodes = 1000;
  cfg.family = gs::GraphFamily::Log;
  cfg.measures = 100;
  cfg.support = 10;
  cfg.seed = seed;
  cfg.lp_pairs = 100;
  const auto row = gs::run_bench(cfg);
  if (!row.per_pair_ms_lp) return {false, "LP oracle was skipped"};
  const double speedup = *row.per_pair_ms_lp * 1e6 / row.per_pair_ns_sipm;
  std::ostringstream os;
  os.precision(4);
  os << "S_p " << row.per_pair_ns_sipm << " ns/pair, LP " << *row.per_pair_ms_lp << " ms/pair, speedup x"
     << speedup;
  return {speedup >= 100.0, os.str()};
}

Outcome sliced(const gs::VerifyOptions& opt) {
  const auto axioms = gs::verify_sliced(opt);
  const auto inst = gs::make_synth_instance(1000, gs::GraphFamily::Log, 50, 5, opt.seed);
  const std::size_t k = 4;
  const auto t = gs::time_sliced(inst.synth.graph, inst.measures, k, 2.0, opt.seed, 30);
  const double budget = static_cast<double>(k) * (t.single_root_ms + t.preprocessing_ms);
  std::ostringstream os;
  os.precision(4);
  os << "K=" << k << ": sliced " << t.sliced_ms << " ms vs budget " << budget << " ms (single root "
     << t.single_root_ms << " ms, prep " << t.preprocessing_ms << " ms, ratio " << t.sliced_ms / budget << "); axioms: " << summarize(axioms);
  return {axioms.passed() && t.sliced_ms <= budget, os.str()};
}

}  // namespace

int main() {
  gs::VerifyOptions opt;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"beta closed form vs quadrature", [&] { return beta_oracle(opt); }},
      {"continuum consistency", [&] { return continuum(opt); }},
      {"tree equality with W1", [&] { return tree_equality(opt); }},
      {"metric axioms", [&] { return suite(gs::verify_metric, opt); }},
      {"sandwich bounds", [&] { return suite(gs::verify_bounds, opt); }},
      {"definiteness and divisibility", [&] { return suite(gs::verify_definiteness, opt); }},
      {"sparsity and complexity", [&] { return sparsity(opt.seed); }},
      {"speed against LP", [&] { return speed_vs_lp(opt.seed); }},
      {"sliced variant", [&] { return sliced(opt); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first
              << ": " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
