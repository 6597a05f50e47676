#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "gsobolev/graph.hpp"
#include "gsobolev/oracle.hpp"
#include "gsobolev/synth.hpp"
#include "support.hpp"

using namespace gsobolev;
using testing::error_kind;

TEST_CASE("parse path graph") {
  const Graph g = testing::graph_from("3 2\n0 1 1.0\n1 2 1.0");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.edge(1).u == 1);
  CHECK(g.edge(1).v == 2);
  CHECK(g.total_length() == 2.0);
  CHECK(g.is_tree());
}

TEST_CASE("comments, blank lines and CRLF are accepted") {
  const Graph g = testing::graph_from("# header\r\n\r\n2 1\r\n# edge\r\n0 1 2.5\r\n");
  CHECK(g.edge_count() == 1);
  CHECK(g.edge(0).length == 2.5);
}

TEST_CASE("graph validation errors") {
  CHECK(error_kind([] { testing::graph_from("3 2\n0 1 -1\n1 2 1"); }) == ErrorKind::NonPositiveWeight);
  CHECK(error_kind([] { testing::graph_from("3 2\n0 1 0\n1 2 1"); }) == ErrorKind::NonPositiveWeight);
  CHECK(error_kind([] { testing::graph_from("3 2\n0 1 nan\n1 2 1"); }) == ErrorKind::NonPositiveWeight);
  CHECK(error_kind([] { testing::graph_from("3 1\n0 1 1"); }) == ErrorKind::Disconnected);
  CHECK(error_kind([] { testing::graph_from("3 3\n0 1 1\n1 2 1\n2 1 3"); }) == ErrorKind::DuplicateEdge);
  CHECK(error_kind([] { testing::graph_from("3 2\n0 1 1\n1 3 1"); }) == ErrorKind::NodeOutOfRange);
  CHECK(error_kind([] { testing::graph_from("3 2\n0 1 1\n1 2"); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { testing::graph_from("3 2\n0 1 1\n1 2 1x"); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { testing::graph_from("3 3\n0 1 1\n1 2 1"); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { testing::graph_from("3 1\n0 1 1\n1 2 1"); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { testing::graph_from(""); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { testing::graph_from("2 1\n1 1 1"); }) == ErrorKind::InvalidArgument);
  CHECK(error_kind([] { load_graph("/nonexistent/graph.txt"); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("write_graph round trips") {
  const Graph g = load_graph(testing::data_path("small.graph"));
  std::ostringstream out;
  write_graph(out, g);
  const Graph back = testing::graph_from(out.str());
  REQUIRE(back.edge_count() == g.edge_count());
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    CHECK(back.edge(e).u == g.edge(e).u);
    CHECK(back.edge(e).v == g.edge(e).v);
    CHECK(back.edge(e).length == g.edge(e).length);
  }
}

TEST_CASE("path graph shortest path tree") {
  const Graph g = testing::path_graph();
  const auto rs = shortest_path_tree(g, 0);
  CHECK(rs.dist == std::vector<double>{0, 1, 2});
  CHECK(rs.parent == std::vector<NodeId>{kNoNode, 0, 1});
  CHECK(rs.parent_edge == std::vector<EdgeId>{kNoEdge, 0, 1});
  CHECK(rs.warnings.empty());
  CHECK(root_path_edges(rs, 0).empty());
  CHECK(root_path_edges(rs, 2) == std::vector<EdgeId>{0, 1});

  const auto prep = lambda_gamma(g, rs);
  CHECK(prep.lambda_gamma()[1] == 0.0);
  CHECK(prep.lambda_gamma()[0] == 1.0);
  CHECK(prep.total_length() == 2.0);
}

TEST_CASE("ten-node fixture: root path of node 4 and lambda of the subtree below edge 0-4") {
  const Graph g = load_graph(testing::data_path("ten_node.graph"));
  CHECK(g.node_count() == 10);
  CHECK(g.edge_count() == 15);
  for (const auto& e : g.edges()) CHECK(e.length == 1.0);
  const auto rs = shortest_path_tree(g, 0);
  CHECK(rs.warnings.empty());
  // edges 0-1 and 1-4 (ids 0 and 4)
  CHECK(root_path_edges(rs, 4) == std::vector<EdgeId>{0, 4});
  const auto prep = lambda_gamma(g, rs);
  // subtree below 1-4 holds 4-3 and 4-9
  CHECK(prep.lambda_gamma()[4] == doctest::Approx(2.0).epsilon(1e-14));
  for (NodeId v : {1, 2, 6}) CHECK(rs.dist[static_cast<std::size_t>(v)] == 1.0);
  for (NodeId v : {4, 5, 7, 8}) CHECK(rs.dist[static_cast<std::size_t>(v)] == 2.0);
}

TEST_CASE("unit square: tie broken toward the smaller id") {
  const Graph g = load_graph(testing::data_path("square.graph"));
  const auto rs = shortest_path_tree(g, 0);
  CHECK(rs.dist == std::vector<double>{0, 1, 2, 1});
  CHECK(rs.parent[2] == 1);
  REQUIRE(rs.warnings.size() == 1);
  CHECK(rs.warnings[0].node == 2);
  CHECK(rs.warnings[0].chosen == 1);
  CHECK(rs.warnings[0].rejected == 3);
  CHECK(rs.tree_edges == std::vector<EdgeId>{0, 1, 3});

  // Edge 2-3 is non-tree; its breakpoint sits at node 2, so every interior
  // point routes through 3. Edge 1-2 hangs below 1.
  const auto prep = lambda_gamma(g, rs);
  CHECK(prep.lambda_gamma()[0] == doctest::Approx(1.0));
  CHECK(prep.lambda_gamma()[3] == doctest::Approx(1.0));
  CHECK(prep.lambda_gamma()[1] == doctest::Approx(0.0));
  CHECK(routed_fraction(g, rs, 2, 3) == doctest::Approx(1.0));
  CHECK(routed_fraction(g, rs, 2, 2) == doctest::Approx(0.0));
}

TEST_CASE("small weighted graph: breakpoint split of the non-tree edge") {
  const Graph g = load_graph(testing::data_path("small.graph"));
  const auto rs = shortest_path_tree(g, 0);
  // dist: 0, 1, 2.7, 1.5, 3.4
  CHECK(rs.dist[2] == doctest::Approx(2.7));
  CHECK(rs.dist[4] == doctest::Approx(3.4));
  CHECK(rs.is_tree_edge(0));
  CHECK_FALSE(rs.is_tree_edge(1));
  CHECK_FALSE(rs.is_tree_edge(5));
  // edge 1-2 (w=2): t* through node 1 = (2.7 - 1 + 2) / 4 = 0.925
  CHECK(routed_fraction(g, rs, 1, 1) == doctest::Approx(0.925));
  const auto prep = lambda_gamma(g, rs);
  // Lambda(1): 0.925 * 2 of edge 1-2 plus the part of edge 1-3 nearer to 1,
  // t* = (1.5 - 1 + 0.9) / 1.8 = 7/9 of 0.9.
  CHECK(prep.lambda_gamma()[0] == doctest::Approx(1.85 + 0.7));
  const auto brute = brute_force_lambda_below(g, rs);
  CHECK(brute[1] == doctest::Approx(1.85 + 0.7));
}

TEST_CASE("property: Dijkstra agrees with Floyd-Warshall") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 2 + rng() % 49;
    const Graph g = random_graph(n, rng() % (2 * n), seed);
    const auto fw = floyd_warshall(g);
    const NodeId root = static_cast<NodeId>(rng() % n);
    const auto rs = shortest_path_tree(g, root);
    for (std::size_t v = 0; v < n; ++v) {
      CHECK(rs.dist[v] == doctest::Approx(fw[static_cast<std::size_t>(root)][v]).epsilon(1e-12));
      if (static_cast<NodeId>(v) == root) continue;
      const auto& e = g.edge(rs.parent_edge[v]);
      CHECK(rs.dist[v] == doctest::Approx(rs.dist[static_cast<std::size_t>(rs.parent[v])] + e.length).epsilon(1e-12));
    }
    CHECK(rs.tree_edges.size() == n - 1);
    CHECK(rs.warnings.empty());
    const auto plain = dijkstra_distances(g, root);
    for (std::size_t v = 0; v < n; ++v) CHECK(plain[v] == rs.dist[v]);
  }
}

TEST_CASE("property: topo order increases and root paths are monotone") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(30, 25, seed);
    const auto rs = shortest_path_tree(g, 3);
    for (std::size_t k = 1; k < rs.topo_order.size(); ++k) {
      CHECK(rs.dist[static_cast<std::size_t>(rs.topo_order[k - 1])] <=
            rs.dist[static_cast<std::size_t>(rs.topo_order[k])]);
    }
    for (NodeId x = 0; x < 30; ++x) {
      double d = 0.0;
      NodeId at = 3;
      for (EdgeId e : root_path_edges(rs, x)) {
        const auto& edge = g.edge(e);
        at = edge.other(at);
        d += edge.length;
        CHECK(rs.dist[static_cast<std::size_t>(at)] == doctest::Approx(d));
      }
      CHECK(at == x);
    }
  }
}

TEST_CASE("property: lambda of gamma on trees equals descendant edge length") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = random_tree(2 + seed * 3, seed);
    const NodeId root = static_cast<NodeId>(seed % g.node_count());
    const auto rs = shortest_path_tree(g, root);
    const auto prep = lambda_gamma(g, rs);
    // Brute force: sum lengths of edges whose root path contains e.
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
      double below = 0.0;
      for (EdgeId f = 0; f < static_cast<EdgeId>(g.edge_count()); ++f) {
        if (f == e) continue;
        const auto& edge = g.edge(f);
        const NodeId far = rs.parent_edge[static_cast<std::size_t>(edge.u)] == f ? edge.u : edge.v;
        const auto path = root_path_edges(rs, far);
        if (std::find(path.begin(), path.end(), e) != path.end()) below += edge.length;
      }
      CHECK(prep.lambda_gamma()[static_cast<std::size_t>(e)] == doctest::Approx(below).epsilon(1e-12));
      CHECK(prep.lambda_gamma()[static_cast<std::size_t>(e)] <= prep.total_length() - g.edge(e).length + 1e-12);
    }
  }
}

TEST_CASE("property: breakpoint lambda agrees with brute-force enumeration") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = random_graph(4 + seed, seed + 3, seed);
    const auto rs = shortest_path_tree(g, 0);
    const auto prep = lambda_gamma(g, rs);
    const auto brute = brute_force_lambda_below(g, rs);
    for (EdgeId e : rs.tree_edges) {
      const auto& edge = g.edge(e);
      const NodeId child = rs.parent_edge[static_cast<std::size_t>(edge.u)] == e ? edge.u : edge.v;
      CHECK(prep.lambda_gamma()[static_cast<std::size_t>(e)] ==
            doctest::Approx(brute[static_cast<std::size_t>(child)]).epsilon(1e-10));
    }
    // Nested tree edges shrink by at least the inner edge length.
    for (EdgeId e : rs.tree_edges) {
      const auto& edge = g.edge(e);
      const NodeId child = rs.parent_edge[static_cast<std::size_t>(edge.u)] == e ? edge.u : edge.v;
      const NodeId parent = rs.parent[static_cast<std::size_t>(child)];
      if (parent == rs.root) continue;
      const EdgeId up = rs.parent_edge[static_cast<std::size_t>(parent)];
      CHECK(prep.lambda_gamma()[static_cast<std::size_t>(e)] + edge.length <=
            prep.lambda_gamma()[static_cast<std::size_t>(up)] + 1e-12);
    }
  }
}

TEST_CASE("shortcut detection") {
  const Graph g(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 5.0}});
  const auto cuts = find_shortcuts(g);
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].edge == 2);
  CHECK(cuts[0].shortest == doctest::Approx(2.0));
  CHECK(find_shortcuts(testing::path_graph()).empty());
}

TEST_CASE("tie tolerance scales with distance") {
  CHECK(tie_tolerance(0.5) == doctest::Approx(1e-12));
  CHECK(tie_tolerance(1e6) == doctest::Approx(1e-6));
}
