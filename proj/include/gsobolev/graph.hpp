#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <vector>

namespace gsobolev {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr EdgeId kNoEdge = -1;
inline constexpr NodeId kNoNode = -1;

struct Edge {
  NodeId u;
  NodeId v;
  double length;

  NodeId other(NodeId x) const noexcept { return x == u ? v : u; }
};

struct Arc {
  NodeId to;
  EdgeId edge;
};

// Undirected graph with positive edge lengths. Node ids are dense and
// 0-based; edge ids follow insertion order. Immutable once constructed,
// and the constructor rejects anything that is not a simple, connected,
// positively weighted graph.
class Graph {
 public:
  Graph(std::size_t node_count, std::vector<Edge> edges,
        std::vector<std::vector<double>> coords = {});

  std::size_t node_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }

  std::span<const Arc> neighbors(NodeId v) const {
    const auto i = static_cast<std::size_t>(v);
    return {arcs_.data() + offsets_[i], arcs_.data() + offsets_[i + 1]};
  }

  // lambda(G): sum of all edge lengths.
  double total_length() const noexcept { return total_length_; }

  // Optional embedding, only filled in by the synthetic builders.
  const std::vector<std::vector<double>>& coords() const noexcept { return coords_; }

  bool is_tree() const noexcept { return edges_.size() + 1 == node_count(); }

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<double>> coords_;
  double total_length_ = 0.0;
};

// Text format: "n m" header, then m lines "u v w". '#' starts a comment line.
Graph parse_graph(std::istream& in);
Graph load_graph(const std::filesystem::path& path);
void write_graph(std::ostream& out, const Graph& g);

// Two shortest paths of equal length reached `node`; `chosen` (the smaller
// id) became its parent and `rejected` did not.
struct TieWarning {
  NodeId node;
  NodeId chosen;
  NodeId rejected;
};

struct RootedStructure {
  NodeId root = 0;
  std::vector<double> dist;
  std::vector<EdgeId> parent_edge;  // kNoEdge for the root
  std::vector<NodeId> parent;       // kNoNode for the root
  std::vector<EdgeId> tree_edges;   // sorted
  std::vector<char> in_tree;        // per edge
  std::vector<NodeId> topo_order;   // increasing dist, ties by id
  std::vector<TieWarning> warnings;

  std::size_t node_count() const noexcept { return dist.size(); }
  bool is_tree_edge(EdgeId e) const { return in_tree[static_cast<std::size_t>(e)] != 0; }
};

// Two path lengths are considered equal within this tolerance.
double tie_tolerance(double dist) noexcept;

RootedStructure shortest_path_tree(const Graph& g, NodeId root);

// Edges of the shortest path [root, x], ordered from the root outwards.
std::vector<EdgeId> root_path_edges(const RootedStructure& rs, NodeId x);

// Single-source distances without tree bookkeeping.
std::vector<double> dijkstra_distances(const Graph& g, NodeId source);

// An edge is a short cut when it is strictly longer than the graph distance
// between its endpoints. The length measure assumes there are none, so these
// are reported rather than rejected.
struct ShortcutWarning {
  EdgeId edge;
  double length;
  double shortest;
};
std::vector<ShortcutWarning> find_shortcuts(const Graph& g);

// Per-root preprocessing: lambda(gamma_e) for every edge plus a lazily
// filled cache of beta weights keyed by exponent. For a tree edge with far
// endpoint v, lambda(gamma_e) is the length of Lambda(v). Non-tree edges get
// 0; no node-supported measure puts mass on their gamma set.
class EdgePrep {
 public:
  EdgePrep(NodeId root, std::vector<double> lambda_gamma, std::vector<double> lengths,
           double total_length);

  NodeId root() const noexcept { return root_; }
  std::span<const double> lambda_gamma() const noexcept { return lambda_gamma_; }
  std::span<const double> lengths() const noexcept { return lengths_; }
  double total_length() const noexcept { return total_length_; }
  std::size_t edge_count() const noexcept { return lengths_.size(); }

  // Returns the cached vector for p, computing it with `make` on first use.
  // Safe to call concurrently.
  template <typename Make>
  std::shared_ptr<const std::vector<double>> cached_betas(double p, Make&& make) const {
    {
      std::shared_lock lock(cache_->mutex);
      if (auto it = cache_->by_exponent.find(p); it != cache_->by_exponent.end()) {
        return it->second;
      }
    }
    auto fresh = std::make_shared<const std::vector<double>>(make());
    std::unique_lock lock(cache_->mutex);
    return cache_->by_exponent.try_emplace(p, std::move(fresh)).first->second;
  }

 private:
  struct BetaCache {
    std::shared_mutex mutex;
    std::map<double, std::shared_ptr<const std::vector<double>>> by_exponent;
  };

  NodeId root_;
  std::vector<double> lambda_gamma_;
  std::vector<double> lengths_;
  double total_length_;
  std::unique_ptr<BetaCache> cache_;
};

EdgePrep lambda_gamma(const Graph& g, const RootedStructure& rs);

// Fraction of edge e, measured from endpoint `from`, whose points are reached
// from the root through `from`. Tree edges go entirely to their parent side.
double routed_fraction(const Graph& g, const RootedStructure& rs, EdgeId e, NodeId from);

}  // namespace gsobolev
