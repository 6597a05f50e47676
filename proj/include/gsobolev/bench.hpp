#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsobolev/graph.hpp"
#include "gsobolev/measure.hpp"
#include "gsobolev/synth.hpp"

namespace gsobolev {

// A clustered synthetic graph plus a measure collection on it.
struct SynthInstance {
  SynthGraph synth;
  std::vector<DiscreteMeasure> measures;
};

// 2M uniform points in [0,1]^8, clustered to M centroids, joined by the
// requested family, then `count` measures with `support` nodes each.
SynthInstance make_synth_instance(std::size_t nodes, GraphFamily family, std::size_t count,
                                  std::size_t support, std::uint64_t seed);

struct BenchConfig {
  std::size_t nodes = 100;
  GraphFamily family = GraphFamily::Log;
  std::size_t measures = 50;
  std::size_t support = 5;
  double p = 2.0;
  std::uint64_t seed = 42;
  std::size_t repeats = 5;   // timings are the minimum over repeats
  std::size_t lp_pairs = 20; // LP is slow; time it on a prefix of the pairs
  bool run_lp = true;
};

struct BenchRow {
  std::size_t nodes = 0;
  std::string family;
  std::size_t edges = 0;
  double preprocessing_ms = 0.0;   // Dijkstra + lambda(gamma_e) + beta_e, one root
  double gamma_ns = 0.0;           // cumulative vector per measure
  double per_pair_ns_sipm = 0.0;
  double per_pair_ns_st = 0.0;
  std::optional<double> per_pair_ms_lp;  // empty when the LP size cap is exceeded
  double mean_sparse_edges = 0.0;        // mean |E_mu,nu| over timed pairs
  std::size_t pairs = 0;
  std::size_t cached_roots = 0;          // roots preprocessed during the run
};

BenchRow run_bench(const BenchConfig& cfg);

// Sliced cost against the per-root cost of the same K roots.
struct SlicedTiming {
  std::size_t roots = 0;
  double sliced_ms = 0.0;          // fresh cache: prep + vectors + distances for all roots
  double single_root_ms = 0.0;     // mean per root: vectors + distances on a prepared root
  double preprocessing_ms = 0.0;   // mean per root: shortest paths, lambda(gamma_e), beta_e
};

SlicedTiming time_sliced(const Graph& g, const std::vector<DiscreteMeasure>& measures, std::size_t roots,
                         double p, std::uint64_t seed, std::size_t repeats = 5);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);

}  // namespace gsobolev
