#include "gsobolev/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "compensated_sum.hpp"
#include "gsobolev/error.hpp"
#include "gsobolev/metric.hpp"

namespace gsobolev {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFlowEps = 1e-15;

// ancestors[c][v] != 0 iff v lies on the root path of c (c included).
std::vector<std::vector<char>> ancestor_table(const RootedStructure& rs) {
  const std::size_t n = rs.node_count();
  std::vector<std::vector<char>> anc(n, std::vector<char>(n, 0));
  for (std::size_t c = 0; c < n; ++c) {
    NodeId v = static_cast<NodeId>(c);
    while (true) {
      anc[c][static_cast<std::size_t>(v)] = 1;
      if (v == rs.root) break;
      v = rs.parent[static_cast<std::size_t>(v)];
    }
  }
  return anc;
}

double geometric_fraction(const Graph& g, const std::vector<double>& dist, EdgeId e, NodeId from) {
  const Edge& edge = g.edge(e);
  const double w = edge.length;
  const double t = (dist[static_cast<std::size_t>(edge.other(from))] - dist[static_cast<std::size_t>(from)] + w) /
                   (2.0 * w);
  return std::clamp(t, 0.0, 1.0);
}

}  // namespace

TransportPlanLP solve_transport_lp(const Graph& g, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                   const LpLimits& limits) {
  if (g.node_count() > limits.max_nodes) {
    throw Error(ErrorKind::SizeLimitExceeded, "graph has " + std::to_string(g.node_count()) +
                                                  " nodes, LP oracle limit is " + std::to_string(limits.max_nodes));
  }
  if (mu.support_size() > limits.max_support || nu.support_size() > limits.max_support) {
    throw Error(ErrorKind::SizeLimitExceeded, "support exceeds LP oracle limit of " +
                                                  std::to_string(limits.max_support));
  }

  TransportPlanLP lp;
  double total_mu = 0.0;
  double total_nu = 0.0;
  for (const Atom& a : mu.atoms()) {
    if (a.mass <= 0.0) continue;
    lp.sources.push_back(a.node);
    lp.source_mass.push_back(a.mass);
    total_mu += a.mass;
  }
  for (const Atom& a : nu.atoms()) {
    if (a.mass <= 0.0) continue;
    lp.sinks.push_back(a.node);
    lp.sink_mass.push_back(a.mass);
    total_nu += a.mass;
  }
  if (std::abs(total_mu - total_nu) > kMassTolerance) {
    throw Error(ErrorKind::InfeasibleMass, "measures carry different total mass");
  }

  const std::size_t n1 = lp.sources.size();
  const std::size_t n2 = lp.sinks.size();
  lp.cost.resize(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i) {
    const auto dist = dijkstra_distances(g, lp.sources[i]);
    for (std::size_t j = 0; j < n2; ++j) lp.cost[i * n2 + j] = dist[static_cast<std::size_t>(lp.sinks[j])];
  }
  lp.plan.assign(n1 * n2, 0.0);

  // Successive shortest paths with node potentials on the network
  // s -> sources -> sinks -> t. Node layout: [0, n1) sources, [n1, n1 + n2)
  // sinks, then s and t.
  const std::size_t s = n1 + n2;
  const std::size_t t = s + 1;
  const std::size_t nodes = n1 + n2 + 2;
  std::vector<double> supply = lp.source_mass;
  std::vector<double> demand = lp.sink_mass;
  std::vector<double> pot(nodes, 0.0);
  std::vector<double> dist(nodes);
  std::vector<std::size_t> prev(nodes);
  std::vector<char> done(nodes);
  double remaining = std::min(total_mu, total_nu);

  const std::size_t max_rounds = 16 * (n1 + n2) * (n1 + n2) + 64;
  for (std::size_t round = 0; remaining > kFlowEps && round < max_rounds; ++round) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(done.begin(), done.end(), 0);
    dist[s] = 0.0;
    auto relax = [&](std::size_t from, std::size_t to, double cost) {
      const double nd = dist[from] + std::max(0.0, cost + pot[from] - pot[to]);
      if (nd < dist[to]) {
        dist[to] = nd;
        prev[to] = from;
      }
    };
    for (std::size_t iter = 0; iter < nodes; ++iter) {
      std::size_t u = nodes;
      for (std::size_t k = 0; k < nodes; ++k) {
        if (!done[k] && dist[k] < kInf && (u == nodes || dist[k] < dist[u])) u = k;
      }
      if (u == nodes) break;
      done[u] = 1;
      if (u == s) {
        for (std::size_t i = 0; i < n1; ++i) {
          if (supply[i] > kFlowEps) relax(s, i, 0.0);
        }
      } else if (u < n1) {
        for (std::size_t j = 0; j < n2; ++j) relax(u, n1 + j, lp.cost[u * n2 + j]);
      } else if (u < n1 + n2) {
        const std::size_t j = u - n1;
        for (std::size_t i = 0; i < n1; ++i) {
          if (lp.plan[i * n2 + j] > kFlowEps) relax(u, i, -lp.cost[i * n2 + j]);
        }
        if (demand[j] > kFlowEps) relax(u, t, 0.0);
      }
    }
    if (dist[t] == kInf) break;
    for (std::size_t k = 0; k < nodes; ++k) pot[k] += std::min(dist[k], dist[t]);

    double push = remaining;
    for (std::size_t v = t; v != s; v = prev[v]) {
      const std::size_t u = prev[v];
      if (u == s) {
        push = std::min(push, supply[v]);
      } else if (v == t) {
        push = std::min(push, demand[u - n1]);
      } else if (u >= n1) {
        push = std::min(push, lp.plan[v * n2 + (u - n1)]);
      }
    }
    for (std::size_t v = t; v != s; v = prev[v]) {
      const std::size_t u = prev[v];
      if (u == s) {
        supply[v] -= push;
      } else if (v == t) {
        demand[u - n1] -= push;
      } else if (u < n1) {
        lp.plan[u * n2 + (v - n1)] += push;
      } else {
        lp.plan[v * n2 + (u - n1)] -= push;
      }
    }
    remaining -= push;
  }
  if (remaining > 1e-12) throw Error(ErrorKind::NonConvergence, "transport LP did not route all mass");

  detail::CompensatedSum obj;
  for (std::size_t k = 0; k < lp.plan.size(); ++k) obj.add(lp.plan[k] * lp.cost[k]);
  lp.objective = obj.value();
  return lp;
}

double wasserstein1_lp(const Graph& g, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                       const LpLimits& limits) {
  return solve_transport_lp(g, mu, nu, limits).objective;
}

TransportDual transport_dual(const TransportPlanLP& lp) {
  const std::size_t n1 = lp.sources.size();
  const std::size_t n2 = lp.sinks.size();
  // Bellman-Ford from a virtual node joined to everything at cost 0. Arcs
  // i -> j cost c_ij always; j -> i cost -c_ij where the plan is positive.
  std::vector<double> pi(n1 + n2, 0.0);
  for (std::size_t pass = 0; pass <= n1 + n2; ++pass) {
    bool changed = false;
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = 0; j < n2; ++j) {
        const double c = lp.cost[i * n2 + j];
        if (pi[i] + c < pi[n1 + j] - 1e-15) {
          pi[n1 + j] = pi[i] + c;
          changed = true;
        }
        if (lp.plan[i * n2 + j] > kFlowEps && pi[n1 + j] - c < pi[i] - 1e-15) {
          pi[i] = pi[n1 + j] - c;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  TransportDual dual;
  detail::CompensatedSum obj;
  for (std::size_t i = 0; i < n1; ++i) obj.add(-pi[i] * lp.source_mass[i]);
  for (std::size_t j = 0; j < n2; ++j) obj.add(pi[n1 + j] * lp.sink_mass[j]);
  dual.objective = obj.value();
  for (std::size_t i = 0; i < n1; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n2; ++j) {
      dual.max_infeasibility = std::max(dual.max_infeasibility, pi[n1 + j] - pi[i] - lp.cost[i * n2 + j]);
      row += lp.plan[i * n2 + j];
    }
    dual.max_marginal_error = std::max(dual.max_marginal_error, std::abs(row - lp.source_mass[i]));
  }
  for (std::size_t j = 0; j < n2; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n1; ++i) col += lp.plan[i * n2 + j];
    dual.max_marginal_error = std::max(dual.max_marginal_error, std::abs(col - lp.sink_mass[j]));
  }
  return dual;
}

double beta_quadrature(double lambda_gamma, double length, double p, std::size_t steps) {
  check_exponent(p, false);
  if (steps < 100) throw Error(ErrorKind::InvalidArgument, "quadrature needs at least 100 steps");
  if (steps % 2) ++steps;
  const double base = 1.0 + lambda_gamma;
  auto f = [&](double t) { return std::pow(base + length * t, 1.0 - p) * length; };
  const double h = 1.0 / static_cast<double>(steps);
  detail::CompensatedSum acc;
  acc.add(f(0.0));
  acc.add(f(1.0));
  for (std::size_t k = 1; k < steps; ++k) acc.add((k % 2 ? 4.0 : 2.0) * f(static_cast<double>(k) * h));
  return acc.value() * h / 3.0;
}

std::vector<double> brute_force_lambda_below(const Graph& g, const RootedStructure& rs) {
  const auto anc = ancestor_table(rs);
  const std::size_t n = g.node_count();
  std::vector<double> out(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    detail::CompensatedSum acc;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const Edge& edge = g.edges()[e];
      const double t = geometric_fraction(g, rs.dist, static_cast<EdgeId>(e), edge.u);
      if (anc[static_cast<std::size_t>(edge.u)][v]) acc.add(t * edge.length);
      if (anc[static_cast<std::size_t>(edge.v)][v]) acc.add((1.0 - t) * edge.length);
    }
    out[v] = acc.value();
  }
  return out;
}

double distance_by_discretization(const Graph& g, NodeId root, const DiscreteMeasure& mu,
                                  const DiscreteMeasure& nu, double p, std::size_t resolution) {
  check_exponent(p, false);
  if (resolution < 10) throw Error(ErrorKind::InvalidArgument, "resolution must be >= 10");
  const RootedStructure rs = shortest_path_tree(g, root);
  const auto anc = ancestor_table(rs);
  const auto lambda_below = brute_force_lambda_below(g, rs);
  const std::size_t n = g.node_count();

  auto mass_below = [&](const DiscreteMeasure& m, std::size_t v) {
    double s = 0.0;
    for (const Atom& a : m.atoms()) {
      if (anc[static_cast<std::size_t>(a.node)][v]) s += a.mass;
    }
    return s;
  };
  std::vector<double> diff(n);
  for (std::size_t v = 0; v < n; ++v) diff[v] = mass_below(mu, v) - mass_below(nu, v);

  detail::CompensatedSum total;
  const double step = 1.0 / static_cast<double>(resolution);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edges()[e];
    const auto id = static_cast<EdgeId>(e);
    const double w = edge.length;
    const double t_u = geometric_fraction(g, rs.dist, id, edge.u);
    detail::CompensatedSum edge_sum;
    for (std::size_t k = 0; k < resolution; ++k) {
      const double s = (static_cast<double>(k) + 0.5) * step;  // fraction from u
      // Route the point through whichever endpoint gives the shorter path.
      const bool via_u = rs.dist[static_cast<std::size_t>(edge.u)] + s * w <=
                         rs.dist[static_cast<std::size_t>(edge.v)] + (1.0 - s) * w;
      const NodeId near = via_u ? edge.u : edge.v;
      const NodeId far = edge.other(near);
      const double r = via_u ? s : 1.0 - s;
      const double t_near = via_u ? t_u : 1.0 - t_u;
      // Lambda(x): the rest of the edge up to the split point, plus
      // Lambda(far) when the far endpoint hangs off this edge.
      const bool continues = rs.parent_edge[static_cast<std::size_t>(far)] == id;
      const double delta = continues ? diff[static_cast<std::size_t>(far)] : 0.0;
      if (delta == 0.0) continue;
      const double lambda = std::max(0.0, t_near - r) * w +
                            (continues ? lambda_below[static_cast<std::size_t>(far)] : 0.0);
      edge_sum.add(std::pow(1.0 + lambda, 1.0 - p) * std::pow(std::abs(delta), p));
    }
    total.add(edge_sum.value() * w * step);
  }
  return total.value();
}

std::vector<std::vector<double>> floyd_warshall(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0.0;
  for (const Edge& e : g.edges()) {
    auto& a = d[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)];
    a = std::min(a, e.length);
    d[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = a;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

}  // namespace gsobolev
