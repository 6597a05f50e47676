#include "gsobolev/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <queue>
#include <unordered_set>

#include "gsobolev/error.hpp"
#include "text_io.hpp"

namespace gsobolev {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t pair_key(NodeId a, NodeId b) {
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return (hi << 32) | lo;
}

}  // namespace

Graph::Graph(std::size_t node_count, std::vector<Edge> edges,
             std::vector<std::vector<double>> coords)
    : edges_(std::move(edges)), coords_(std::move(coords)) {
  if (node_count == 0) throw Error(ErrorKind::InvalidArgument, "graph has no nodes");
  if (node_count > static_cast<std::size_t>(std::numeric_limits<NodeId>::max())) {
    throw Error(ErrorKind::SizeLimitExceeded, "too many nodes");
  }
  if (!coords_.empty() && coords_.size() != node_count) {
    throw Error(ErrorKind::InvalidArgument, "coordinate count does not match node count");
  }

  const auto n = static_cast<NodeId>(node_count);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size() * 2);
  std::vector<std::size_t> degree(node_count, 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw Error(ErrorKind::NodeOutOfRange, "edge " + std::to_string(i) + " references node outside [0, " +
                                                 std::to_string(n) + ")");
    }
    if (e.u == e.v) {
      throw Error(ErrorKind::InvalidArgument, "edge " + std::to_string(i) + " is a self-loop");
    }
    if (!(std::isfinite(e.length) && e.length > 0.0)) {
      throw Error(ErrorKind::NonPositiveWeight, "edge " + std::to_string(i) + " has length " +
                                                    std::to_string(e.length));
    }
    if (!seen.insert(pair_key(e.u, e.v)).second) {
      throw Error(ErrorKind::DuplicateEdge, "edge " + std::to_string(i) + " repeats pair (" +
                                                std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    }
    ++degree[static_cast<std::size_t>(e.u)];
    ++degree[static_cast<std::size_t>(e.v)];
    total_length_ += e.length;
  }

  offsets_.assign(node_count + 1, 0);
  for (std::size_t v = 0; v < node_count; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  arcs_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    const auto id = static_cast<EdgeId>(i);
    arcs_[fill[static_cast<std::size_t>(e.u)]++] = {e.v, id};
    arcs_[fill[static_cast<std::size_t>(e.v)]++] = {e.u, id};
  }

  // Connectivity from node 0.
  std::vector<char> reached(node_count, 0);
  std::vector<NodeId> stack{0};
  reached[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (const Arc& a : neighbors(v)) {
      auto& r = reached[static_cast<std::size_t>(a.to)];
      if (!r) {
        r = 1;
        ++count;
        stack.push_back(a.to);
      }
    }
  }
  if (count != node_count) {
    throw Error(ErrorKind::Disconnected, "only " + std::to_string(count) + " of " +
                                             std::to_string(node_count) + " nodes reachable from node 0");
  }
}

Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!detail::next_data_line(in, line, line_no)) detail::parse_fail(line_no, "missing 'n m' header");
  const auto header = detail::split_fields(line, " \t");
  if (header.size() != 2) detail::parse_fail(line_no, "header must be 'n m'");
  const auto n = detail::parse_number<long long>(header[0], line_no);
  const auto m = detail::parse_number<long long>(header[1], line_no);
  if (n <= 0 || m < 0) detail::parse_fail(line_no, "header counts out of range");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  while (detail::next_data_line(in, line, line_no)) {
    const auto fields = detail::split_fields(line, " \t");
    if (fields.size() != 3) detail::parse_fail(line_no, "edge line must be 'u v w'");
    if (static_cast<long long>(edges.size()) == m) detail::parse_fail(line_no, "more edges than declared");
    const auto u = detail::parse_number<long long>(fields[0], line_no);
    const auto v = detail::parse_number<long long>(fields[1], line_no);
    const auto w = detail::parse_number<double>(fields[2], line_no);
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorKind::NodeOutOfRange, "line " + std::to_string(line_no) + ": node id out of range");
    }
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
  }
  if (static_cast<long long>(edges.size()) != m) {
    detail::parse_fail(line_no, "expected " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open graph file " + path.string());
  return parse_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  out << std::setprecision(17);
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.length << '\n';
}

double tie_tolerance(double dist) noexcept { return 1e-12 * std::max(1.0, dist); }

std::vector<double> dijkstra_distances(const Graph& g, NodeId source) {
  std::vector<double> dist(g.node_count(), kInf);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[static_cast<std::size_t>(source)] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[static_cast<std::size_t>(v)]) continue;
    for (const Arc& a : g.neighbors(v)) {
      const double nd = d + g.edge(a.edge).length;
      auto& cur = dist[static_cast<std::size_t>(a.to)];
      if (nd < cur) {
        cur = nd;
        heap.emplace(nd, a.to);
      }
    }
  }
  return dist;
}

RootedStructure shortest_path_tree(const Graph& g, NodeId root) {
  const std::size_t n = g.node_count();
  if (root < 0 || static_cast<std::size_t>(root) >= n) {
    throw Error(ErrorKind::NodeOutOfRange, "root " + std::to_string(root) + " outside graph");
  }
  RootedStructure rs;
  rs.root = root;
  rs.dist = dijkstra_distances(g, root);
  rs.parent_edge.assign(n, kNoEdge);
  rs.parent.assign(n, kNoNode);
  rs.in_tree.assign(g.edge_count(), 0);

  // Parents are chosen after the distances settle so that tie detection does
  // not depend on heap order: every neighbour that realises dist[v] within
  // tolerance is a candidate, and the smallest id wins.
  for (std::size_t vi = 0; vi < n; ++vi) {
    const auto v = static_cast<NodeId>(vi);
    if (v == root) continue;
    const double tol = tie_tolerance(rs.dist[vi]);
    NodeId best = kNoNode;
    EdgeId best_edge = kNoEdge;
    std::vector<NodeId> others;
    for (const Arc& a : g.neighbors(v)) {
      const double via = rs.dist[static_cast<std::size_t>(a.to)] + g.edge(a.edge).length;
      if (std::abs(via - rs.dist[vi]) > tol) continue;
      if (best == kNoNode || a.to < best) {
        if (best != kNoNode) others.push_back(best);
        best = a.to;
        best_edge = a.edge;
      } else {
        others.push_back(a.to);
      }
    }
    rs.parent[vi] = best;
    rs.parent_edge[vi] = best_edge;
    rs.in_tree[static_cast<std::size_t>(best_edge)] = 1;
    for (NodeId o : others) rs.warnings.push_back({v, best, o});
  }

  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (rs.in_tree[e]) rs.tree_edges.push_back(static_cast<EdgeId>(e));
  }
  rs.topo_order.resize(n);
  for (std::size_t v = 0; v < n; ++v) rs.topo_order[v] = static_cast<NodeId>(v);
  std::sort(rs.topo_order.begin(), rs.topo_order.end(), [&](NodeId a, NodeId b) {
    const double da = rs.dist[static_cast<std::size_t>(a)];
    const double db = rs.dist[static_cast<std::size_t>(b)];
    return da != db ? da < db : a < b;
  });
  return rs;
}

std::vector<EdgeId> root_path_edges(const RootedStructure& rs, NodeId x) {
  std::vector<EdgeId> path;
  for (NodeId v = x; v != rs.root; v = rs.parent[static_cast<std::size_t>(v)]) {
    path.push_back(rs.parent_edge[static_cast<std::size_t>(v)]);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<ShortcutWarning> find_shortcuts(const Graph& g) {
  std::vector<ShortcutWarning> out;
  std::vector<std::vector<EdgeId>> by_source(g.node_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    by_source[static_cast<std::size_t>(std::min(g.edges()[e].u, g.edges()[e].v))].push_back(
        static_cast<EdgeId>(e));
  }
  for (std::size_t s = 0; s < g.node_count(); ++s) {
    if (by_source[s].empty()) continue;
    const auto dist = dijkstra_distances(g, static_cast<NodeId>(s));
    for (EdgeId e : by_source[s]) {
      const Edge& edge = g.edge(e);
      const double shortest = dist[static_cast<std::size_t>(edge.other(static_cast<NodeId>(s)))];
      if (edge.length > shortest + tie_tolerance(shortest)) out.push_back({e, edge.length, shortest});
    }
  }
  return out;
}

EdgePrep::EdgePrep(NodeId root, std::vector<double> lambda_gamma, std::vector<double> lengths,
                   double total_length)
    : root_(root),
      lambda_gamma_(std::move(lambda_gamma)),
      lengths_(std::move(lengths)),
      total_length_(total_length),
      cache_(std::make_unique<BetaCache>()) {}

double routed_fraction(const Graph& g, const RootedStructure& rs, EdgeId e, NodeId from) {
  const Edge& edge = g.edge(e);
  const NodeId to = edge.other(from);
  if (rs.is_tree_edge(e)) return rs.parent_edge[static_cast<std::size_t>(to)] == e ? 1.0 : 0.0;
  // A point at fraction s from `from` is reached through `from` while
  // dist[from] + s w <= dist[to] + (1 - s) w.
  const double w = edge.length;
  const double t =
      (rs.dist[static_cast<std::size_t>(to)] - rs.dist[static_cast<std::size_t>(from)] + w) / (2.0 * w);
  return std::clamp(t, 0.0, 1.0);
}

EdgePrep lambda_gamma(const Graph& g, const RootedStructure& rs) {
  const std::size_t n = g.node_count();
  // below[v] starts as the length attached directly to v (the parts of its
  // incident edges reached through v) and is then accumulated bottom-up into
  // lambda(Lambda(v)).
  std::vector<double> below(n, 0.0);
  std::vector<double> lengths(g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    const auto id = static_cast<EdgeId>(i);
    lengths[i] = e.length;
    const double t = routed_fraction(g, rs, id, e.u);
    below[static_cast<std::size_t>(e.u)] += t * e.length;
    below[static_cast<std::size_t>(e.v)] += (1.0 - t) * e.length;
  }
  for (auto it = rs.topo_order.rbegin(); it != rs.topo_order.rend(); ++it) {
    const auto v = static_cast<std::size_t>(*it);
    if (*it != rs.root) below[static_cast<std::size_t>(rs.parent[v])] += below[v];
  }

  std::vector<double> lg(g.edge_count(), 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    if (static_cast<NodeId>(v) == rs.root) continue;
    lg[static_cast<std::size_t>(rs.parent_edge[v])] = below[v];
  }
  return EdgePrep(rs.root, std::move(lg), std::move(lengths), g.total_length());
}

}  // namespace gsobolev
