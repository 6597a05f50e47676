#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gsobolev/graph.hpp"
#include "gsobolev/measure.hpp"

namespace gsobolev {

class PointCloud {
 public:
  PointCloud() = default;
  // Throws EmptyCloud for no points; all points must share one dimension and
  // have finite coordinates.
  explicit PointCloud(std::vector<std::vector<double>> points);

  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dim() const noexcept { return points_.empty() ? 0 : points_.front().size(); }
  const std::vector<double>& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<std::vector<double>>& points() const noexcept { return points_; }

 private:
  std::vector<std::vector<double>> points_;
};

// "n d" header, then n lines of d decimals.
PointCloud parse_point_cloud(std::istream& in);
PointCloud load_point_cloud(const std::filesystem::path& path);

double euclidean(const std::vector<double>& a, const std::vector<double>& b);

// Uniform points in [0, 1]^dim.
PointCloud random_point_cloud(std::size_t count, std::size_t dim, std::uint64_t seed);

struct Clustering {
  PointCloud centroids;
  std::vector<std::size_t> centroid_index;  // point index of each centroid
  std::vector<std::size_t> assignment;      // point -> centroid (ties to the smaller centroid)
};

// Greedy farthest-first traversal. The first centroid is drawn from the
// seeded RNG; each later one is the point farthest from those chosen so far.
Clustering farthest_point_clustering(const PointCloud& pc, std::size_t max_clusters, std::uint64_t seed);

enum class GraphFamily { Log, Sqrt };

std::string to_string(GraphFamily family);
GraphFamily parse_graph_family(const std::string& name);

// ceil(M ln M) for Log, ceil(M^1.5) for Sqrt, capped at M(M-1)/2.
std::size_t target_edge_count(std::size_t nodes, GraphFamily family);

struct SynthGraph {
  Graph graph;
  std::size_t sampled_edges = 0;
  std::size_t connecting_edges = 0;  // components in the sampled graph minus one
  std::vector<std::string> warnings;
};

// Random edges between centroids with Euclidean lengths, then one random
// edge per extra connected component to join them up.
SynthGraph build_random_graph(const PointCloud& centroids, GraphFamily family, std::uint64_t seed);

// Each measure: `support_size` distinct uniform nodes with Dirichlet(1) masses.
std::vector<DiscreteMeasure> random_measures(const Graph& g, std::size_t count, std::size_t support_size,
                                             std::uint64_t seed);

// Random measure with a random support size in [1, max_support].
DiscreteMeasure random_measure(const Graph& g, std::size_t max_support, std::uint64_t seed,
                               const std::string& id = "r");

// Small Euclidean test instances on random points in the unit square.
Graph random_tree(std::size_t nodes, std::uint64_t seed);
Graph random_graph(std::size_t nodes, std::size_t extra_edges, std::uint64_t seed);

}  // namespace gsobolev
