#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "gsobolev/metric.hpp"
#include "gsobolev/oracle.hpp"
#include "gsobolev/synth.hpp"
#include "support.hpp"

using namespace gsobolev;
using testing::dirac;
using testing::error_kind;

namespace {

struct PathSetup {
  Graph g = testing::path_graph();
  std::shared_ptr<const RootContext> ctx = prepare_root(g, 0);
  SparseEdgeVector a = gamma_mass(ctx->structure, dirac(1, 3));
  SparseEdgeVector b = gamma_mass(ctx->structure, dirac(2, 3));
  SparseEdgeVector z = gamma_mass(ctx->structure, dirac(0, 3));
};

}  // namespace

TEST_CASE("beta weights pinned values") {
  CHECK(beta_weight(0.0, 1.0, 1.0) == 1.0);
  CHECK(beta_weight(3.7, 0.25, 1.0) == 0.25);
  CHECK(beta_weight(0.0, 1.0, 2.0) == doctest::Approx(0.6931471805599453).epsilon(1e-15));
  CHECK(beta_weight(0.0, 1.0, 1.5) == doctest::Approx(0.8284271247461903).epsilon(1e-14));
  CHECK(beta_weight(3.0, 0.5, 1.5) == doctest::Approx(0.24264068711928477).epsilon(1e-14));
  CHECK(error_kind([] { beta_weight(0.0, 1.0, 0.5); }) == ErrorKind::InvalidExponent);
  CHECK(error_kind([] { beta_weight(0.0, 1.0, std::nan("")); }) == ErrorKind::InvalidExponent);
  CHECK(error_kind([] { beta_weight(0.0, 1.0, kInfiniteExponent); }) == ErrorKind::InvalidExponent);
}

TEST_CASE("beta is continuous across the p = 2 branch") {
  for (double lg : {0.0, 0.5, 3.0, 40.0}) {
    for (double w : {0.01, 1.0, 5.0}) {
      const double at2 = beta_weight(lg, w, 2.0);
      for (double p : {2.0 - 1e-6, 2.0 + 1e-6, 2.0 - 2e-9, 2.0 + 2e-9}) {
        CHECK(std::abs(beta_weight(lg, w, p) - at2) / at2 < 1e-5);
      }
    }
  }
}

TEST_CASE("beta cache on the prep holds p = 1 as the edge lengths") {
  const Graph g = load_graph(testing::data_path("small.graph"));
  const auto ctx = prepare_root(g, 0);
  const auto b1 = beta_weights(ctx->prep, 1.0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) CHECK((*b1)[e] == g.edges()[e].length);
  CHECK(beta_weights(ctx->prep, 1.5).get() == beta_weights(ctx->prep, 1.5).get());
}

TEST_CASE("shared zero-lambda table reproduces the per-root betas") {
  const Graph g = random_graph(40, 60, 5);
  const auto ctx = prepare_root(g, 0);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const auto shared = zero_lambda_betas(ctx->prep.lengths(), p);
    for (NodeId r : {0, 7, 21}) {
      const auto plain = beta_weights(prepare_root(g, r)->prep, p);
      const auto via = beta_weights(prepare_root(g, r)->prep, p, shared);
      CHECK(*plain == *via);
    }
  }
  CHECK(error_kind([&] { beta_weights(ctx->prep, 2.0, std::vector<double>(3)); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("path graph distances") {
  PathSetup s;
  CHECK(sobolev_ipm_distance(s.ctx->prep, s.a, s.a, 2.0) == 0.0);
  CHECK(sobolev_ipm_distance(s.ctx->prep, s.a, s.b, 1.0) == 1.0);
  CHECK(sobolev_ipm_distance(s.ctx->prep, s.a, s.b, 2.0) == doctest::Approx(0.8325546111576977).epsilon(1e-15));
  CHECK(sobolev_ipm_infinity(s.ctx->prep, s.a, s.b) == 1.0);
  CHECK(sobolev_ipm_infinity(s.ctx->prep, s.b, s.b) == 0.0);
  CHECK(sobolev_transport_distance(s.ctx->prep, s.a, s.b, 1.0) == 1.0);
  CHECK(sobolev_transport_distance(s.ctx->prep, s.a, s.b, 2.0) == 1.0);
  CHECK(sobolev_transport_distance(s.ctx->prep, s.b, s.b, 2.0) == 0.0);
  // graph metric on {z0, a, b} at p = 1
  CHECK(sobolev_ipm_distance(s.ctx->prep, s.z, s.b, 1.0) == 2.0);
  CHECK(distance(s.ctx->prep, s.a, s.b, kInfiniteExponent, Variant::RegularizedSobolevIpm) == 1.0);
}

TEST_CASE("infinity variant under edge scaling") {
  const auto nu_atoms = std::vector<Atom>{{1, 0.9}, {2, 0.1}};
  for (const auto& [scale, expected] : {std::pair{1.0, 0.5}, std::pair{2.0, 1.0 / 3.0}}) {
    const Graph g = testing::path_graph(scale);
    const auto ctx = prepare_root(g, 0);
    const auto u = gamma_mass(ctx->structure, dirac(0, 3));
    const auto v = gamma_mass(ctx->structure, testing::measure(nu_atoms, 3));
    CHECK(sobolev_ipm_infinity(ctx->prep, u, v) == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("root mismatch and exponent errors") {
  PathSetup s;
  const auto other = prepare_root(s.g, 2);
  const auto b2 = gamma_mass(other->structure, dirac(2, 3));
  CHECK(error_kind([&] { sobolev_ipm_distance(s.ctx->prep, s.a, b2, 1.0); }) == ErrorKind::RootMismatch);
  CHECK(error_kind([&] { sobolev_ipm_infinity(s.ctx->prep, s.a, b2); }) == ErrorKind::RootMismatch);
  CHECK(error_kind([&] { sobolev_transport_distance(s.ctx->prep, s.a, b2, 1.0); }) == ErrorKind::RootMismatch);
  CHECK(error_kind([&] { DistanceEvaluator(s.ctx->prep, 2.0)(s.a, b2); }) == ErrorKind::RootMismatch);
  CHECK(error_kind([&] { sobolev_ipm_distance(s.ctx->prep, s.a, s.b, 0.9); }) == ErrorKind::InvalidExponent);
  CHECK(error_kind([&] {
          distance(s.ctx->prep, s.a, s.b, kInfiniteExponent, Variant::SobolevTransport);
        }) == ErrorKind::InvalidExponent);
  CHECK_NOTHROW(check_exponent(kInfiniteExponent));
  CHECK_THROWS(check_exponent(kInfiniteExponent, false));
}

TEST_CASE("small weighted graph matches the definition-level oracle") {
  // Values from a brute-force evaluation over the metric graph that tests
  // shortest-path membership point by point (grid of 400 x 4000 per edge).
  const Graph g = load_graph(testing::data_path("small.graph"));
  const auto ms = load_measures(testing::data_path("small.measures"), g);
  const auto ctx = prepare_root(g, 0);
  const auto u = gamma_mass(ctx->structure, ms[0]);
  const auto v = gamma_mass(ctx->structure, ms[1]);
  CHECK(sobolev_ipm_distance(ctx->prep, u, v, 1.0) == doctest::Approx(2.3).epsilon(1e-12));
  CHECK(std::abs(sobolev_ipm_distance(ctx->prep, u, v, 1.5) - 1.1248456) < 5e-4);
  CHECK(std::abs(sobolev_ipm_distance(ctx->prep, u, v, 2.0) - 0.8301223) < 5e-4);
  CHECK(std::abs(sobolev_ipm_distance(ctx->prep, u, v, 3.0) - 0.6450810) < 5e-4);
}

TEST_CASE("evaluator agrees with the free functions") {
  const Graph g = random_graph(25, 20, 5);
  const auto ctx = prepare_root(g, 4);
  const auto u = gamma_mass(ctx->structure, random_measure(g, 6, 1));
  const auto v = gamma_mass(ctx->structure, random_measure(g, 6, 2));
  for (double p : {1.0, 1.3, 2.0, 3.5, kInfiniteExponent}) {
    CHECK(DistanceEvaluator(ctx->prep, p)(u, v) == distance(ctx->prep, u, v, p, Variant::RegularizedSobolevIpm));
  }
  for (double p : {1.0, 2.0, 3.5}) {
    CHECK(DistanceEvaluator(ctx->prep, p, Variant::SobolevTransport)(u, v) ==
          distance(ctx->prep, u, v, p, Variant::SobolevTransport));
  }
}

TEST_CASE("property: distance ignores the order of measure entries") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(30, 15, seed);
    const auto ctx = prepare_root(g, 0);
    const auto mu = random_measure(g, 8, seed + 50);
    const auto nu = random_measure(g, 8, seed + 60);
    std::vector<Atom> shuffled(mu.atoms().begin(), mu.atoms().end());
    std::mt19937_64 rng(seed);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const DiscreteMeasure mu2("p", shuffled, g.node_count());
    const auto v = gamma_mass(ctx->structure, nu);
    for (double p : {1.0, 1.5, 2.0, 3.0, kInfiniteExponent}) {
      CHECK(distance(ctx->prep, gamma_mass(ctx->structure, mu), v, p, Variant::RegularizedSobolevIpm) ==
            distance(ctx->prep, gamma_mass(ctx->structure, mu2), v, p, Variant::RegularizedSobolevIpm));
    }
  }
}

TEST_CASE("property: p = 1 regularized distance equals Sobolev transport") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(20, 10, seed);
    const auto ctx = prepare_root(g, 1);
    const auto u = gamma_mass(ctx->structure, random_measure(g, 5, seed + 7));
    const auto v = gamma_mass(ctx->structure, random_measure(g, 5, seed + 8));
    CHECK(sobolev_ipm_distance(ctx->prep, u, v, 1.0) == sobolev_transport_distance(ctx->prep, u, v, 1.0));
  }
}

TEST_CASE("sliced distance") {
  const Graph g = testing::path_graph();
  const PreparedGraph pg(g);
  const auto a = dirac(1, 3);
  const auto b = dirac(2, 3);
  const std::vector<NodeId> both{0, 2};
  const std::vector<NodeId> one{0};
  CHECK(sliced_distance(pg, both, a, b, 1.0) == 1.0);
  // root 0 sees log 2 on the leaf edge, root 2 sees log 1.5 on edge 1-2
  const double expected = (std::sqrt(std::log(2.0)) + std::sqrt(std::log(1.5))) / 2.0;
  CHECK(sliced_distance(pg, both, a, b, 2.0) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(sliced_distance(pg, both, a, a, 2.0) == 0.0);
  const auto ctx = pg.at(0);
  CHECK(sliced_distance(pg, one, a, b, 2.0) ==
        sobolev_ipm_distance(ctx->prep, gamma_mass(ctx->structure, a), gamma_mass(ctx->structure, b), 2.0));
  CHECK(pg.cached_roots() == 2);
  CHECK(pg.at(2).get() == pg.at(2).get());
  CHECK_THROWS_AS(sliced_distance(pg, std::vector<NodeId>{}, a, b, 1.0), Error);
}

TEST_CASE("sample_roots is seeded and distinct") {
  const auto r1 = sample_roots(50, 10, 7);
  const auto r2 = sample_roots(50, 10, 7);
  CHECK(r1 == r2);
  CHECK(std::set<NodeId>(r1.begin(), r1.end()).size() == 10);
  CHECK(sample_roots(50, 10, 8) != r1);
  CHECK(sample_roots(3, 3, 1).size() == 3);
  CHECK_THROWS_AS(sample_roots(3, 4, 1), Error);
  CHECK_THROWS_AS(sample_roots(3, 0, 1), Error);
}

TEST_CASE("equivalence constants") {
  const auto c = equivalence_constants(3.0, 1.0);
  CHECK(c.c1 == doctest::Approx(0.25));
  CHECK(c.c2 == 1.0);
  CHECK_FALSE(c.degenerate);
  const auto d = equivalence_constants(1.0, 2.0);
  CHECK(d.c1 == doctest::Approx(std::sqrt(0.5)));
  CHECK(d.c2 == 1.0);
  const auto z = equivalence_constants(0.0, 2.0);
  CHECK(z.c1 == 0.0);
  CHECK(z.degenerate);
  CHECK(error_kind([] { equivalence_constants(1.0, 0.5); }) == ErrorKind::InvalidExponent);
  for (double len : {0.1, 0.9, 1.0, 7.0}) {
    for (double p : {1.0, 1.5, 2.0, 4.0}) {
      const auto e = equivalence_constants(len, p);
      CHECK(e.c1 <= e.c2);
    }
  }
}
