#pragma once

#include <span>
#include <vector>

#include "gsobolev/graph.hpp"
#include "gsobolev/measure.hpp"

namespace gsobolev {

// Reference computations that share no code path with the closed forms.

struct LpLimits {
  std::size_t max_support = 500;  // per side
  std::size_t max_nodes = 1000;
};

// Optimal transport between the supports of two measures with graph
// distance as ground cost.
struct TransportPlanLP {
  std::vector<NodeId> sources;
  std::vector<NodeId> sinks;
  std::vector<double> source_mass;
  std::vector<double> sink_mass;
  std::vector<double> cost;  // row-major, sources x sinks
  std::vector<double> plan;  // row-major, sources x sinks
  double objective = 0.0;
};

TransportPlanLP solve_transport_lp(const Graph& g, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                   const LpLimits& limits = {});
double wasserstein1_lp(const Graph& g, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                       const LpLimits& limits = {});

// Dual certificate for a solved plan: potentials from shortest paths in the
// residual network.
struct TransportDual {
  double objective = 0.0;
  double max_infeasibility = 0.0;  // max over (i, j) of f_i + g_j - c_ij, clipped at 0
  double max_marginal_error = 0.0;
};
TransportDual transport_dual(const TransportPlanLP& lp);

// Composite Simpson rule for the beta integral.
double beta_quadrature(double lambda_gamma, double length, double p, std::size_t steps);

// Midpoint Riemann sum of the continuous integral
//   int w_hat(x)^(1-p) |mu(Lambda(x)) - nu(Lambda(x))|^p dx
// with every edge cut into `resolution` pieces. This is the p-th power of the
// regularized Sobolev IPM.
double distance_by_discretization(const Graph& g, NodeId root, const DiscreteMeasure& mu,
                                  const DiscreteMeasure& nu, double p, std::size_t resolution);

// lambda(Lambda(v)) for every node by enumerating, for each edge endpoint,
// whether v lies on that endpoint's root path.
std::vector<double> brute_force_lambda_below(const Graph& g, const RootedStructure& rs);

std::vector<std::vector<double>> floyd_warshall(const Graph& g);

}  // namespace gsobolev
