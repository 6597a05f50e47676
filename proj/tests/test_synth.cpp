#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gsobolev/synth.hpp"
#include "support.hpp"

using namespace gsobolev;
using testing::error_kind;

namespace {

double radius(const PointCloud& pc, const std::vector<std::size_t>& centres) {
  double worst = 0.0;
  for (const auto& p : pc.points()) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c : centres) best = std::min(best, euclidean(p, pc[c]));
    worst = std::max(worst, best);
  }
  return worst;
}

// Optimal M-center radius by enumerating every centre subset.
double optimal_radius(const PointCloud& pc, std::size_t m) {
  const std::size_t n = pc.size();
  std::vector<char> mask(n, 0);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(m), 1);
  double best = std::numeric_limits<double>::infinity();
  do {
    std::vector<std::size_t> centres;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask[i]) centres.push_back(i);
    }
    best = std::min(best, radius(pc, centres));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return best;
}

}  // namespace

TEST_CASE("point cloud parsing") {
  std::istringstream in("3 2\n0 0\n1 0\n0 1.5\n");
  const auto pc = parse_point_cloud(in);
  CHECK(pc.size() == 3);
  CHECK(pc.dim() == 2);
  CHECK(pc[2][1] == 1.5);
  std::istringstream bad("2 2\n0 0\n1\n");
  CHECK(error_kind([&] { parse_point_cloud(bad); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { PointCloud(std::vector<std::vector<double>>{}); }) == ErrorKind::EmptyCloud);
  CHECK(error_kind([] { farthest_point_clustering(PointCloud(), 2, 1); }) == ErrorKind::EmptyCloud);
}

TEST_CASE("clustering with M at least the cloud size keeps every point") {
  const auto pc = random_point_cloud(7, 3, 1);
  const auto c = farthest_point_clustering(pc, 10, 4);
  CHECK(c.centroids.size() == 7);
  std::vector<std::size_t> all(7);
  std::iota(all.begin(), all.end(), 0);
  CHECK(c.centroid_index == all);
  CHECK(c.assignment == all);
}

TEST_CASE("collinear farthest-first trace") {
  const PointCloud pc({{0.0}, {1.0}, {10.0}});
  bool seen = false;
  for (std::uint64_t seed = 0; seed < 64 && !seen; ++seed) {
    const auto c = farthest_point_clustering(pc, 2, seed);
    if (c.centroid_index[0] != 0) continue;
    seen = true;
    CHECK(c.centroid_index == std::vector<std::size_t>{0, 2});
    CHECK(c.centroids[1][0] == 10.0);
    CHECK(c.assignment == std::vector<std::size_t>{0, 0, 1});
  }
  CHECK(seen);
}

TEST_CASE("assignment is to a nearest centroid, ties to the smaller index") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto pc = random_point_cloud(60, 2, seed);
    const auto c = farthest_point_clustering(pc, 7, seed);
    for (std::size_t i = 0; i < pc.size(); ++i) {
      const double own = euclidean(pc[i], c.centroids[c.assignment[i]]);
      for (std::size_t k = 0; k < c.centroids.size(); ++k) {
        const double d = euclidean(pc[i], c.centroids[k]);
        CHECK(own <= d);
        if (d == own) CHECK(c.assignment[i] <= k);
      }
    }
  }
}

TEST_CASE("property: farthest-first is a 2-approximation of the M-center radius") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const std::size_t n = 5 + seed % 8;
    const std::size_t m = 1 + seed % 4;
    const auto pc = random_point_cloud(n, 2, seed + 100);
    const auto c = farthest_point_clustering(pc, m, seed);
    CHECK(radius(pc, c.centroid_index) <= 2.0 * optimal_radius(pc, m) + 1e-12);
  }
}

TEST_CASE("edge count targets") {
  CHECK(target_edge_count(100, GraphFamily::Log) == 461);
  CHECK(target_edge_count(100, GraphFamily::Sqrt) == 1000);
  CHECK(target_edge_count(4, GraphFamily::Sqrt) == 6);
  CHECK(parse_graph_family("sqrt") == GraphFamily::Sqrt);
  CHECK(to_string(GraphFamily::Log) == "log");
  CHECK(error_kind([] { parse_graph_family("cube"); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("two centroids give a single edge") {
  const PointCloud pc({{0.0, 0.0}, {3.0, 4.0}});
  const auto sg = build_random_graph(pc, GraphFamily::Log, 1);
  REQUIRE(sg.graph.edge_count() == 1);
  CHECK(sg.graph.edge(0).length == 5.0);
  CHECK(error_kind([] { build_random_graph(PointCloud(std::vector<std::vector<double>>{{1.0}}), GraphFamily::Log, 1); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("random graph families") {
  const auto pc = random_point_cloud(100, 3, 2);
  const auto sg = build_random_graph(pc, GraphFamily::Log, 5);
  CHECK(sg.sampled_edges == 461);
  CHECK(sg.graph.edge_count() == 461 + sg.connecting_edges);
  CHECK(sg.graph.node_count() == 100);
  CHECK(sg.graph.coords().size() == 100);
  for (const auto& e : sg.graph.edges()) {
    CHECK(e.length == doctest::Approx(euclidean(pc[static_cast<std::size_t>(e.u)], pc[static_cast<std::size_t>(e.v)])));
  }
  const auto again = build_random_graph(pc, GraphFamily::Log, 5);
  REQUIRE(again.graph.edge_count() == sg.graph.edge_count());
  for (EdgeId e = 0; e < static_cast<EdgeId>(sg.graph.edge_count()); ++e) {
    CHECK(again.graph.edge(e).u == sg.graph.edge(e).u);
    CHECK(again.graph.edge(e).v == sg.graph.edge(e).v);
  }
  const auto dense = build_random_graph(random_point_cloud(12, 2, 3), GraphFamily::Sqrt, 1);
  CHECK(dense.graph.edge_count() == 42);
}

TEST_CASE("sparse sampling needs connecting edges") {
  const auto pc = random_point_cloud(400, 2, 9);
  const auto sg = build_random_graph(pc, GraphFamily::Log, 9);
  CHECK(sg.graph.edge_count() == sg.sampled_edges + sg.connecting_edges);
}

TEST_CASE("coincident centroids are jittered with a warning") {
  const PointCloud pc({{0.0}, {0.0}});
  const auto sg = build_random_graph(pc, GraphFamily::Log, 1);
  CHECK(sg.graph.edge(0).length == 1e-9);
  REQUIRE(sg.warnings.size() == 1);
  CHECK(sg.warnings[0].find("DegenerateGeometry") != std::string::npos);
}

TEST_CASE("random measures") {
  const Graph g = random_graph(30, 10, 1);
  const auto diracs = random_measures(g, 5, 1, 3);
  for (const auto& m : diracs) {
    REQUIRE(m.support_size() == 1);
    CHECK(m.atoms()[0].mass == 1.0);
  }
  const auto ms = random_measures(g, 20, 7, 4);
  for (const auto& m : ms) {
    CHECK(m.support_size() == 7);
    double total = 0.0;
    for (const auto& a : m.atoms()) total += a.mass;
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
  const auto again = random_measures(g, 20, 7, 4);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t k = 0; k < 7; ++k) {
      CHECK(again[i].atoms()[k].node == ms[i].atoms()[k].node);
      CHECK(again[i].atoms()[k].mass == ms[i].atoms()[k].mass);
    }
  }
  CHECK(error_kind([&] { random_measures(g, 1, 31, 1); }) == ErrorKind::SupportTooLarge);
}

TEST_CASE("small instance builders are valid and seeded") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph t = random_tree(12, seed);
    CHECK(t.is_tree());
    const Graph g = random_graph(12, 8, seed);
    CHECK(g.edge_count() == 19);
    CHECK(random_graph(12, 8, seed).edge(18).length == g.edge(18).length);
  }
}
