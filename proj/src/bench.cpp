#include "gsobolev/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "gsobolev/kernel.hpp"
#include "gsobolev/metric.hpp"
#include "gsobolev/oracle.hpp"

namespace gsobolev {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ns(Clock::time_point start) {
  return std::chrono::duration<double, std::nano>(Clock::now() - start).count();
}

template <typename Fn>
double min_time_ns(std::size_t repeats, Fn&& fn) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < std::max<std::size_t>(repeats, 1); ++r) {
    const auto start = Clock::now();
    fn();
    best = std::min(best, elapsed_ns(start));
  }
  return best;
}

std::size_t union_size(const SparseEdgeVector& a, const SparseEdgeVector& b) {
  const auto x = a.entries();
  const auto y = b.entries();
  std::size_t i = 0, j = 0, n = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].first < y[j].first) {
      ++i;
    } else if (y[j].first < x[i].first) {
      ++j;
    } else {
      ++i;
      ++j;
    }
    ++n;
  }
  return n + (x.size() - i) + (y.size() - j);
}

volatile double g_sink = 0.0;

}  // namespace

SynthInstance make_synth_instance(std::size_t nodes, GraphFamily family, std::size_t count,
                                  std::size_t support, std::uint64_t seed) {
  const auto cloud = random_point_cloud(2 * nodes, 8, seed);
  const auto clusters = farthest_point_clustering(cloud, nodes, seed + 1);
  auto synth = build_random_graph(clusters.centroids, family, seed + 2);
  auto measures = random_measures(synth.graph, count, support, seed + 3);
  return {std::move(synth), std::move(measures)};
}

BenchRow run_bench(const BenchConfig& cfg) {
  check_exponent(cfg.p, false);
  const auto inst = make_synth_instance(cfg.nodes, cfg.family, cfg.measures, cfg.support, cfg.seed);
  const Graph& g = inst.synth.graph;
  BenchRow row;
  row.nodes = g.node_count();
  row.family = to_string(cfg.family);
  row.edges = g.edge_count();

  const NodeId root = 0;
  row.preprocessing_ms = min_time_ns(cfg.repeats, [&] {
                           const auto ctx = prepare_root(g, root);
                           g_sink = g_sink + (*beta_weights(ctx->prep, cfg.p))[0];
                         }) / 1e6;

  const PreparedGraph pg(g);
  const auto ctx = pg.at(root);
  const auto& ms = inst.measures;
  std::vector<SparseEdgeVector> vectors(ms.size());
  row.gamma_ns = min_time_ns(cfg.repeats, [&] {
                   for (std::size_t i = 0; i < ms.size(); ++i) vectors[i] = gamma_mass(ctx->structure, ms[i]);
                 }) / static_cast<double>(std::max<std::size_t>(ms.size(), 1));

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) pairs.emplace_back(i, j);
  }
  row.pairs = pairs.size();
  const double npairs = static_cast<double>(std::max<std::size_t>(pairs.size(), 1));

  auto time_pairs = [&](const DistanceEvaluator& eval) {
    return min_time_ns(cfg.repeats, [&] {
             double acc = 0.0;
             for (const auto& [i, j] : pairs) acc += eval(vectors[i], vectors[j]);
             g_sink = g_sink + acc;
           }) / npairs;
  };
  row.per_pair_ns_sipm = time_pairs(DistanceEvaluator(ctx->prep, cfg.p, Variant::RegularizedSobolevIpm));
  row.per_pair_ns_st = time_pairs(DistanceEvaluator(ctx->prep, cfg.p, Variant::SobolevTransport));

  std::size_t sparse = 0;
  for (const auto& [i, j] : pairs) sparse += union_size(vectors[i], vectors[j]);
  row.mean_sparse_edges = static_cast<double>(sparse) / npairs;

  const LpLimits limits;
  if (cfg.run_lp && g.node_count() <= limits.max_nodes && cfg.support <= limits.max_support && !pairs.empty()) {
    const std::size_t count = std::min(cfg.lp_pairs, pairs.size());
    const auto start = Clock::now();
    for (std::size_t k = 0; k < count; ++k) {
      g_sink = g_sink + wasserstein1_lp(g, ms[pairs[k].first], ms[pairs[k].second], limits);
    }
    row.per_pair_ms_lp = elapsed_ns(start) / 1e6 / static_cast<double>(count);
  }
  row.cached_roots = pg.cached_roots();
  return row;
}

SlicedTiming time_sliced(const Graph& g, const std::vector<DiscreteMeasure>& measures, std::size_t roots,
                         double p, std::uint64_t seed, std::size_t repeats) {
  const auto chosen = sample_roots(g.node_count(), roots, seed);
  SlicedTiming out;
  out.roots = chosen.size();
  double sliced = std::numeric_limits<double>::infinity();
  double prep = sliced;
  double single = sliced;
  // Each repeat times the sliced run and the K separate runs as whole sums; minima are taken over repeats.
  for (std::size_t rep = 0; rep < std::max<std::size_t>(repeats, 1); ++rep) {
    auto start = Clock::now();
    {
      const PreparedGraph pg(g);
      const auto d = sliced_distance_matrix(pg, chosen, measures, p);
      g_sink = g_sink + d.max_abs();
    }
    sliced = std::min(sliced, elapsed_ns(start));

    double prep_sum = 0.0;
    double single_sum = 0.0;
    for (NodeId r : chosen) {
      start = Clock::now();
      const auto ctx = prepare_root(g, r);
      if (!std::isinf(p)) g_sink = g_sink + (*beta_weights(ctx->prep, p))[0];
      prep_sum += elapsed_ns(start);

      start = Clock::now();
      std::vector<SparseEdgeVector> vectors(measures.size());
      for (std::size_t i = 0; i < measures.size(); ++i) vectors[i] = gamma_mass(ctx->structure, measures[i]);
      const auto d = distance_matrix(ctx->prep, vectors, p);
      g_sink = g_sink + d.max_abs();
      single_sum += elapsed_ns(start);
    }
    prep = std::min(prep, prep_sum);
    single = std::min(single, single_sum);
  }
  const double k = static_cast<double>(chosen.size());
  out.sliced_ms = sliced / 1e6;
  out.preprocessing_ms = prep / k / 1e6;
  out.single_root_ms = single / k / 1e6;
  return out;
}

std::string bench_csv_header() {
  return "M,family,edges,preprocessing_ms,gamma_ns,per_pair_ns_sipm,per_pair_ns_st,per_pair_ms_lp,"
         "mean_sparse_edges,pairs";
}

std::string bench_csv_row(const BenchRow& row) {
  std::ostringstream os;
  os << row.nodes << ',' << row.family << ',' << row.edges << ',' << row.preprocessing_ms << ',' << row.gamma_ns
     << ',' << row.per_pair_ns_sipm << ',' << row.per_pair_ns_st << ',';
  if (row.per_pair_ms_lp) os << *row.per_pair_ms_lp;
  os << ',' << row.mean_sparse_edges << ',' << row.pairs;
  return os.str();
}

}  // namespace gsobolev
