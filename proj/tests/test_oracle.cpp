#include <doctest.h>

#include <cmath>

#include "gsobolev/metric.hpp"
#include "gsobolev/oracle.hpp"
#include "gsobolev/synth.hpp"
#include "support.hpp"

using namespace gsobolev;
using testing::dirac;
using testing::error_kind;

TEST_CASE("LP on the path graph") {
  const Graph g = testing::path_graph();
  CHECK(wasserstein1_lp(g, dirac(1, 3), dirac(2, 3)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(wasserstein1_lp(g, dirac(1, 3), dirac(1, 3)) == 0.0);
  const auto mix = testing::measure({{0, 0.5}, {2, 0.5}}, 3);
  CHECK(wasserstein1_lp(g, dirac(1, 3), mix) == doctest::Approx(1.0));
  CHECK(wasserstein1_lp(g, dirac(0, 3), mix) == doctest::Approx(1.0));
}

TEST_CASE("LP plan and dual certificate") {
  const Graph g = random_graph(40, 30, 11);
  const auto mu = random_measure(g, 12, 1);
  const auto nu = random_measure(g, 12, 2);
  const auto lp = solve_transport_lp(g, mu, nu);
  double total = 0.0;
  for (std::size_t k = 0; k < lp.plan.size(); ++k) {
    CHECK(lp.plan[k] >= 0.0);
    total += lp.plan[k] * lp.cost[k];
  }
  CHECK(total == doctest::Approx(lp.objective).epsilon(1e-12));
  const auto dual = transport_dual(lp);
  CHECK(dual.max_marginal_error < 1e-9);
  CHECK(dual.max_infeasibility < 1e-9);
  CHECK(std::abs(dual.objective - lp.objective) < 1e-9);
}

TEST_CASE("LP limits") {
  const Graph g = random_graph(30, 10, 1);
  const auto mu = random_measure(g, 10, 1);
  const auto nu = random_measure(g, 10, 2);
  CHECK(error_kind([&] { wasserstein1_lp(g, mu, nu, {.max_support = 3, .max_nodes = 1000}); }) ==
        ErrorKind::SizeLimitExceeded);
  CHECK(error_kind([&] { wasserstein1_lp(g, mu, nu, {.max_support = 500, .max_nodes = 10}); }) ==
        ErrorKind::SizeLimitExceeded);
}

TEST_CASE("beta quadrature") {
  CHECK(beta_quadrature(2.0, 0.7, 1.0, 100) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(std::abs(beta_quadrature(0.0, 1.0, 2.0, 10000) - std::log(2.0)) < 1e-10);
  CHECK(std::abs(beta_quadrature(3.0, 0.5, 1.5, 10000) - beta_weight(3.0, 0.5, 1.5)) < 1e-9);
  CHECK(error_kind([] { beta_quadrature(0.0, 1.0, 0.5, 1000); }) == ErrorKind::InvalidExponent);
  CHECK(error_kind([] { beta_quadrature(0.0, 1.0, 2.0, 10); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("quadrature error shrinks with steps") {
  for (double p : {1.3, 2.0, 3.7}) {
    const double exact = beta_weight(0.2, 4.0, p);
    double last = INFINITY;
    for (std::size_t steps : {100, 400, 1600}) {
      const double err = std::abs(beta_quadrature(0.2, 4.0, p, steps) - exact);
      CHECK(err <= last + 1e-15);
      last = err;
    }
  }
}

TEST_CASE("discretization of the continuous form") {
  const Graph g = testing::path_graph();
  CHECK(distance_by_discretization(g, 0, dirac(1, 3), dirac(1, 3), 2.0, 10) == 0.0);
  CHECK(std::abs(distance_by_discretization(g, 0, dirac(1, 3), dirac(2, 3), 2.0, 100000) - std::log(2.0)) < 1e-5);
  CHECK(error_kind([&] { distance_by_discretization(g, 0, dirac(1, 3), dirac(2, 3), 2.0, 5); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("closed form, discretization and LP agree on trees at p = 1") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_tree(15 + seed, seed);
    const auto mu = random_measure(g, 6, seed + 1);
    const auto nu = random_measure(g, 6, seed + 2);
    const auto ctx = prepare_root(g, 0);
    const double s1 =
        sobolev_ipm_distance(ctx->prep, gamma_mass(ctx->structure, mu), gamma_mass(ctx->structure, nu), 1.0);
    const double disc = distance_by_discretization(g, 0, mu, nu, 1.0, 1000);
    const double lp = wasserstein1_lp(g, mu, nu);
    CHECK(std::abs(s1 - lp) < 1e-8);
    CHECK(std::abs(s1 - disc) < 1e-6);
  }
}

TEST_CASE("discretization on a graph with cycles tracks the closed form") {
  const Graph g = load_graph(testing::data_path("small.graph"));
  const auto ms = load_measures(testing::data_path("small.measures"), g);
  const auto ctx = prepare_root(g, 0);
  const auto u = gamma_mass(ctx->structure, ms[0]);
  const auto v = gamma_mass(ctx->structure, ms[1]);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const double closed = std::pow(sobolev_ipm_distance(ctx->prep, u, v, p), p);
    CHECK(std::abs(distance_by_discretization(g, 0, ms[0], ms[1], p, 20000) - closed) < 1e-6);
  }
}

TEST_CASE("floyd warshall on the unit square") {
  const auto d = floyd_warshall(load_graph(testing::data_path("square.graph")));
  CHECK(d[0][2] == 2.0);
  CHECK(d[1][3] == 2.0);
  CHECK(d[0][3] == 1.0);
}
