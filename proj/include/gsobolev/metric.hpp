#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "gsobolev/graph.hpp"
#include "gsobolev/measure.hpp"

namespace gsobolev {

inline constexpr double kInfiniteExponent = std::numeric_limits<double>::infinity();

enum class Variant { RegularizedSobolevIpm, SobolevTransport };

// Below this distance from 2 the log form of beta is used.
inline constexpr double kLogBranchWidth = 1e-9;

// Integral of (1 + lambda_gamma + length * t)^(1 - p) * length over t in [0, 1].
double beta_weight(double lambda_gamma, double length, double p);

// Per-edge beta for a finite exponent, cached on the prep.
std::shared_ptr<const std::vector<double>> beta_weights(const EdgePrep& prep, double p);

// beta_e at lambda(gamma_e) = 0; depends on the edge length only, so it is shared by every root.
std::vector<double> zero_lambda_betas(std::span<const double> lengths, double p);
// As above, but edges with lambda(gamma_e) = 0 take their value from `shared`.
std::shared_ptr<const std::vector<double>> beta_weights(const EdgePrep& prep, double p,
                                                        std::span<const double> shared);

// (sum_e beta_e |u(e) - v(e)|^p)^(1/p) over the union of the two key sets.
double sobolev_ipm_distance(const EdgePrep& prep, const SparseEdgeVector& u, const SparseEdgeVector& v,
                            double p);

// max_e |u(e) - v(e)| / (1 + lambda(gamma_e)).
double sobolev_ipm_infinity(const EdgePrep& prep, const SparseEdgeVector& u, const SparseEdgeVector& v);

// (sum_e w_e |u(e) - v(e)|^p)^(1/p).
double sobolev_transport_distance(const EdgePrep& prep, const SparseEdgeVector& u,
                                  const SparseEdgeVector& v, double p);

// Dispatches on variant and on p = infinity.
double distance(const EdgePrep& prep, const SparseEdgeVector& u, const SparseEdgeVector& v, double p,
                Variant variant);

// Binds prep, exponent and variant once so that repeated pair evaluations
// skip the beta cache lookup.
class DistanceEvaluator {
 public:
  DistanceEvaluator(const EdgePrep& prep, double p, Variant variant = Variant::RegularizedSobolevIpm);

  double operator()(const SparseEdgeVector& u, const SparseEdgeVector& v) const;

  double exponent() const noexcept { return p_; }
  Variant variant() const noexcept { return variant_; }

 private:
  const EdgePrep* prep_;
  double p_;
  Variant variant_;
  std::shared_ptr<const std::vector<double>> betas_;
};

// Throws InvalidExponent unless p >= 1 (infinity allowed when `allow_infinite`).
void check_exponent(double p, bool allow_infinite = true);

struct RootContext {
  RootedStructure structure;
  EdgePrep prep;
};

// Per-root preprocessing computed on first use and shared afterwards.
class PreparedGraph {
 public:
  explicit PreparedGraph(const Graph& g) : graph_(&g) {}

  const Graph& graph() const noexcept { return *graph_; }
  std::shared_ptr<const RootContext> at(NodeId root) const;
  std::size_t cached_roots() const;

 private:
  const Graph* graph_;
  mutable std::mutex mutex_;
  mutable std::map<NodeId, std::shared_ptr<const RootContext>> roots_;
};

std::shared_ptr<const RootContext> prepare_root(const Graph& g, NodeId root);

// Uniform sample of `count` distinct roots from [0, node_count).
std::vector<NodeId> sample_roots(std::size_t node_count, std::size_t count, std::uint64_t seed);

// Mean over roots of the per-root distance.
double sliced_distance(const PreparedGraph& pg, std::span<const NodeId> roots, const DiscreteMeasure& mu,
                       const DiscreteMeasure& nu, double p, Variant variant = Variant::RegularizedSobolevIpm);

struct EquivalenceConstants {
  double c1;
  double c2;
  bool degenerate;  // lambda(G) == 0 makes c1 vanish
};

EquivalenceConstants equivalence_constants(double total_length, double p);

}  // namespace gsobolev
