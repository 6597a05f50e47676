#include "gsobolev/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_set>

#include "gsobolev/error.hpp"
#include "text_io.hpp"

namespace gsobolev {

namespace {

constexpr double kJitter = 1e-9;

std::uint64_t pair_key(std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(b) << 32) | static_cast<std::uint64_t>(a);
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

Graph euclidean_graph(const std::vector<std::vector<double>>& pts,
                      const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b), euclidean(pts[a], pts[b])});
  }
  return Graph(pts.size(), std::move(edges), pts);
}

std::vector<std::vector<double>> unit_square_points(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> pts(n);
  for (auto& p : pts) p = {unit(rng), unit(rng)};
  return pts;
}

}  // namespace

PointCloud::PointCloud(std::vector<std::vector<double>> points) : points_(std::move(points)) {
  if (points_.empty()) throw Error(ErrorKind::EmptyCloud, "point cloud is empty");
  const std::size_t d = points_.front().size();
  for (const auto& p : points_) {
    if (p.size() != d) throw Error(ErrorKind::InvalidArgument, "points have mixed dimensions");
    for (double x : p) {
      if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "non-finite coordinate");
    }
  }
}

PointCloud parse_point_cloud(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!detail::next_data_line(in, line, line_no)) detail::parse_fail(line_no, "missing 'n d' header");
  const auto header = detail::split_fields(line, " \t");
  if (header.size() != 2) detail::parse_fail(line_no, "header must be 'n d'");
  const auto n = detail::parse_number<std::size_t>(header[0], line_no);
  const auto d = detail::parse_number<std::size_t>(header[1], line_no);
  std::vector<std::vector<double>> pts;
  pts.reserve(n);
  while (detail::next_data_line(in, line, line_no)) {
    const auto fields = detail::split_fields(line, " \t,");
    if (fields.size() != d) detail::parse_fail(line_no, "expected " + std::to_string(d) + " coordinates");
    std::vector<double> p(d);
    for (std::size_t k = 0; k < d; ++k) p[k] = detail::parse_number<double>(fields[k], line_no);
    pts.push_back(std::move(p));
  }
  if (pts.size() != n) detail::parse_fail(line_no, "expected " + std::to_string(n) + " points");
  return PointCloud(std::move(pts));
}

PointCloud load_point_cloud(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open point file " + path.string());
  return parse_point_cloud(in);
}

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

PointCloud random_point_cloud(std::size_t count, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> pts(count, std::vector<double>(dim));
  for (auto& p : pts) {
    for (double& x : p) x = unit(rng);
  }
  return PointCloud(std::move(pts));
}

Clustering farthest_point_clustering(const PointCloud& pc, std::size_t max_clusters, std::uint64_t seed) {
  if (pc.size() == 0) throw Error(ErrorKind::EmptyCloud, "point cloud is empty");
  if (max_clusters == 0) throw Error(ErrorKind::InvalidArgument, "need at least one cluster");
  const std::size_t n = pc.size();
  Clustering out;
  if (max_clusters >= n) {
    out.centroids = pc;
    out.centroid_index.resize(n);
    std::iota(out.centroid_index.begin(), out.centroid_index.end(), 0);
    out.assignment = out.centroid_index;
    return out;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  out.assignment.assign(n, 0);
  std::size_t next = pick(rng);
  std::vector<std::vector<double>> centres;
  while (true) {
    const std::size_t c = out.centroid_index.size();
    out.centroid_index.push_back(next);
    centres.push_back(pc[next]);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = euclidean(pc[i], pc[next]);
      if (d < nearest[i]) {
        nearest[i] = d;
        out.assignment[i] = c;
      }
    }
    if (centres.size() == max_clusters) break;
    next = static_cast<std::size_t>(std::max_element(nearest.begin(), nearest.end()) - nearest.begin());
  }
  out.centroids = PointCloud(std::move(centres));
  return out;
}

std::string to_string(GraphFamily family) { return family == GraphFamily::Log ? "log" : "sqrt"; }

GraphFamily parse_graph_family(const std::string& name) {
  if (name == "log") return GraphFamily::Log;
  if (name == "sqrt") return GraphFamily::Sqrt;
  throw Error(ErrorKind::InvalidArgument, "unknown graph family '" + name + "' (expected log or sqrt)");
}

std::size_t target_edge_count(std::size_t nodes, GraphFamily family) {
  const double m = static_cast<double>(nodes);
  const double want = family == GraphFamily::Log ? m * std::log(m) : std::pow(m, 1.5);
  const std::size_t cap = nodes * (nodes - 1) / 2;
  return std::min(cap, static_cast<std::size_t>(std::ceil(want)));
}

SynthGraph build_random_graph(const PointCloud& centroids, GraphFamily family, std::uint64_t seed) {
  const std::size_t m = centroids.size();
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "need at least two centroids");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> node(0, m - 1);

  const std::size_t target = target_edge_count(m, family);
  const std::size_t all_pairs = m * (m - 1) / 2;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(target + m);
  std::unordered_set<std::uint64_t> used;
  used.reserve(2 * (target + m));

  if (2 * target > all_pairs) {
    // Dense request: shuffle the full pair list and keep a prefix.
    std::vector<std::pair<std::size_t, std::size_t>> every;
    every.reserve(all_pairs);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) every.emplace_back(a, b);
    }
    std::shuffle(every.begin(), every.end(), rng);
    every.resize(target);
    for (const auto& pr : every) used.insert(pair_key(pr.first, pr.second));
    pairs = std::move(every);
  } else {
    while (pairs.size() < target) {
      std::size_t a = node(rng);
      std::size_t b = node(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (used.insert(pair_key(a, b)).second) pairs.emplace_back(a, b);
    }
  }

  SynthGraph out{Graph(1, {}), pairs.size(), 0, {}};
  DisjointSets sets(m);
  std::size_t components = m;
  for (const auto& [a, b] : pairs) components -= sets.unite(a, b) ? 1 : 0;
  out.connecting_edges = components - 1;
  while (components > 1) {
    const std::size_t a = node(rng);
    const std::size_t b = node(rng);
    if (sets.find(a) == sets.find(b)) continue;
    sets.unite(a, b);
    --components;
    pairs.emplace_back(std::min(a, b), std::max(a, b));
  }

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    double w = euclidean(centroids[a], centroids[b]);
    if (w == 0.0) {
      w = kJitter;
      out.warnings.push_back("DegenerateGeometry: centroids " + std::to_string(a) + " and " + std::to_string(b) +
                             " coincide; edge length set to 1e-9");
    }
    edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b), w});
  }
  out.graph = Graph(m, std::move(edges), centroids.points());
  return out;
}

std::vector<DiscreteMeasure> random_measures(const Graph& g, std::size_t count, std::size_t support_size,
                                             std::uint64_t seed) {
  if (support_size == 0 || support_size > g.node_count()) {
    throw Error(ErrorKind::SupportTooLarge, "support size " + std::to_string(support_size) + " for " +
                                                std::to_string(g.node_count()) + " nodes");
  }
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> gamma1(1.0);
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(g.node_count() - 1));
  std::vector<DiscreteMeasure> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Atom> atoms;
    std::unordered_set<NodeId> chosen;
    if (2 * support_size > g.node_count()) {
      std::vector<NodeId> all(g.node_count());
      std::iota(all.begin(), all.end(), 0);
      std::shuffle(all.begin(), all.end(), rng);
      for (std::size_t i = 0; i < support_size; ++i) atoms.push_back({all[i], 0.0});
    } else {
      while (atoms.size() < support_size) {
        const NodeId v = node(rng);
        if (chosen.insert(v).second) atoms.push_back({v, 0.0});
      }
    }
    // Dirichlet(1, ..., 1) as normalised unit exponentials.
    double total = 0.0;
    for (Atom& a : atoms) {
      a.mass = gamma1(rng);
      total += a.mass;
    }
    for (Atom& a : atoms) a.mass /= total;
    out.emplace_back("m" + std::to_string(k), std::move(atoms), g.node_count());
  }
  return out;
}

DiscreteMeasure random_measure(const Graph& g, std::size_t max_support, std::uint64_t seed, const std::string& id) {
  std::mt19937_64 rng(seed);
  const std::size_t cap = std::max<std::size_t>(1, std::min(max_support, g.node_count()));
  std::uniform_int_distribution<std::size_t> size(1, cap);
  const std::size_t k = size(rng);
  auto m = random_measures(g, 1, k, rng());
  return DiscreteMeasure(id, std::vector<Atom>(m[0].atoms().begin(), m[0].atoms().end()), g.node_count());
}

Graph random_tree(std::size_t nodes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pts = unit_square_points(nodes, rng);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t v = 1; v < nodes; ++v) {
    std::uniform_int_distribution<std::size_t> parent(0, v - 1);
    pairs.emplace_back(parent(rng), v);
  }
  return euclidean_graph(pts, pairs);
}

Graph random_graph(std::size_t nodes, std::size_t extra_edges, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pts = unit_square_points(nodes, rng);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::unordered_set<std::uint64_t> used;
  for (std::size_t v = 1; v < nodes; ++v) {
    std::uniform_int_distribution<std::size_t> parent(0, v - 1);
    const std::size_t p = parent(rng);
    pairs.emplace_back(p, v);
    used.insert(pair_key(p, v));
  }
  const std::size_t cap = nodes * (nodes - 1) / 2;
  const std::size_t want = std::min(cap, pairs.size() + extra_edges);
  std::uniform_int_distribution<std::size_t> node(0, nodes - 1);
  while (pairs.size() < want) {
    const std::size_t a = node(rng);
    const std::size_t b = node(rng);
    if (a == b || !used.insert(pair_key(a, b)).second) continue;
    pairs.emplace_back(std::min(a, b), std::max(a, b));
  }
  return euclidean_graph(pts, pairs);
}

}  // namespace gsobolev
