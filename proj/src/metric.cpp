#include "gsobolev/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "compensated_sum.hpp"
#include "gsobolev/error.hpp"

namespace gsobolev {

namespace {

void check_same_root(const EdgePrep& prep, const SparseEdgeVector& u, const SparseEdgeVector& v) {
  if (u.root() != prep.root() || v.root() != prep.root()) {
    throw Error(ErrorKind::RootMismatch, "vectors built for roots " + std::to_string(u.root()) + "/" +
                                             std::to_string(v.root()) + " but prep is rooted at " +
                                             std::to_string(prep.root()));
  }
}

// Calls fn(edge, |u(e) - v(e)|) for every edge in either key set.
template <typename Fn>
void for_each_difference(const SparseEdgeVector& u, const SparseEdgeVector& v, Fn&& fn) {
  const auto a = u.entries();
  const auto b = v.entries();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      fn(a[i].first, std::abs(a[i].second));
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      fn(b[j].first, std::abs(b[j].second));
      ++j;
    } else {
      fn(a[i].first, std::abs(a[i].second - b[j].second));
      ++i;
      ++j;
    }
  }
}

double weighted_power_sum(std::span<const double> weights, const SparseEdgeVector& u,
                          const SparseEdgeVector& v, double p) {
  detail::CompensatedSum acc;
  if (p == 1.0) {
    for_each_difference(u, v, [&](EdgeId e, double d) { acc.add(weights[static_cast<std::size_t>(e)] * d); });
    return acc.value();
  }
  if (p == 2.0) {
    for_each_difference(u, v,
                        [&](EdgeId e, double d) { acc.add(weights[static_cast<std::size_t>(e)] * d * d); });
    return std::sqrt(acc.value());
  }
  for_each_difference(
      u, v, [&](EdgeId e, double d) { acc.add(weights[static_cast<std::size_t>(e)] * std::pow(d, p)); });
  return std::pow(acc.value(), 1.0 / p);
}

}  // namespace

void check_exponent(double p, bool allow_infinite) {
  if (std::isnan(p) || p < 1.0 || (!allow_infinite && std::isinf(p))) {
    throw Error(ErrorKind::InvalidExponent, "exponent must be " +
                                                std::string(allow_infinite ? "in [1, inf]" : "finite and >= 1") +
                                                ", got " + std::to_string(p));
  }
}

double beta_weight(double lambda_gamma, double length, double p) {
  check_exponent(p, false);
  if (p == 1.0) return length;
  const double base = 1.0 + lambda_gamma;
  const double ratio = std::log1p(length / base);
  if (std::abs(p - 2.0) < kLogBranchWidth) return ratio;
  // ((base + w)^(2-p) - base^(2-p)) / (2-p), rewritten with expm1 so the
  // difference does not cancel when p is close to 2.
  const double s = 2.0 - p;
  return std::pow(base, s) * std::expm1(s * ratio) / s;
}

std::shared_ptr<const std::vector<double>> beta_weights(const EdgePrep& prep, double p) {
  check_exponent(p, false);
  return prep.cached_betas(p, [&] {
    std::vector<double> out(prep.edge_count());
    const auto lg = prep.lambda_gamma();
    const auto w = prep.lengths();
    for (std::size_t e = 0; e < out.size(); ++e) out[e] = beta_weight(lg[e], w[e], p);
    return out;
  });
}

std::vector<double> zero_lambda_betas(std::span<const double> lengths, double p) {
  check_exponent(p, false);
  std::vector<double> out(lengths.size());
  for (std::size_t e = 0; e < out.size(); ++e) out[e] = beta_weight(0.0, lengths[e], p);
  return out;
}

std::shared_ptr<const std::vector<double>> beta_weights(const EdgePrep& prep, double p,
                                                        std::span<const double> shared) {
  check_exponent(p, false);
  if (shared.size() != prep.edge_count()) {
    throw Error(ErrorKind::InvalidArgument, "shared beta table does not match the edge count");
  }
  return prep.cached_betas(p, [&] {
    std::vector<double> out(prep.edge_count());
    const auto lg = prep.lambda_gamma();
    const auto w = prep.lengths();
    for (std::size_t e = 0; e < out.size(); ++e) out[e] = lg[e] == 0.0 ? shared[e] : beta_weight(lg[e], w[e], p);
    return out;
  });
}

double sobolev_ipm_distance(const EdgePrep& prep, const SparseEdgeVector& u, const SparseEdgeVector& v,
                            double p) {
  check_exponent(p, false);
  check_same_root(prep, u, v);
  const auto betas = beta_weights(prep, p);
  return weighted_power_sum(*betas, u, v, p);
}

double sobolev_ipm_infinity(const EdgePrep& prep, const SparseEdgeVector& u, const SparseEdgeVector& v) {
  check_same_root(prep, u, v);
  const auto lg = prep.lambda_gamma();
  double best = 0.0;
  for_each_difference(u, v, [&](EdgeId e, double d) {
    best = std::max(best, d / (1.0 + lg[static_cast<std::size_t>(e)]));
  });
  return best;
}

double sobolev_transport_distance(const EdgePrep& prep, const SparseEdgeVector& u,
                                  const SparseEdgeVector& v, double p) {
  check_exponent(p, false);
  check_same_root(prep, u, v);
  return weighted_power_sum(prep.lengths(), u, v, p);
}

double distance(const EdgePrep& prep, const SparseEdgeVector& u, const SparseEdgeVector& v, double p,
                Variant variant) {
  if (variant == Variant::SobolevTransport) return sobolev_transport_distance(prep, u, v, p);
  check_exponent(p, true);
  if (std::isinf(p)) return sobolev_ipm_infinity(prep, u, v);
  return sobolev_ipm_distance(prep, u, v, p);
}

DistanceEvaluator::DistanceEvaluator(const EdgePrep& prep, double p, Variant variant)
    : prep_(&prep), p_(p), variant_(variant) {
  check_exponent(p, variant == Variant::RegularizedSobolevIpm);
  if (variant == Variant::RegularizedSobolevIpm && !std::isinf(p)) betas_ = beta_weights(prep, p);
}

double DistanceEvaluator::operator()(const SparseEdgeVector& u, const SparseEdgeVector& v) const {
  check_same_root(*prep_, u, v);
  if (variant_ == Variant::SobolevTransport) return weighted_power_sum(prep_->lengths(), u, v, p_);
  if (!betas_) return sobolev_ipm_infinity(*prep_, u, v);
  return weighted_power_sum(*betas_, u, v, p_);
}

std::shared_ptr<const RootContext> prepare_root(const Graph& g, NodeId root) {
  auto rs = shortest_path_tree(g, root);
  auto prep = lambda_gamma(g, rs);
  return std::make_shared<const RootContext>(RootContext{std::move(rs), std::move(prep)});
}

std::shared_ptr<const RootContext> PreparedGraph::at(NodeId root) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = roots_.find(root); it != roots_.end()) return it->second;
  }
  // Built outside the lock; a concurrent duplicate is discarded on insert.
  auto fresh = prepare_root(*graph_, root);
  std::lock_guard lock(mutex_);
  return roots_.try_emplace(root, std::move(fresh)).first->second;
}

std::size_t PreparedGraph::cached_roots() const {
  std::lock_guard lock(mutex_);
  return roots_.size();
}

std::vector<NodeId> sample_roots(std::size_t node_count, std::size_t count, std::uint64_t seed) {
  if (count == 0 || count > node_count) {
    throw Error(ErrorKind::InvalidArgument, "cannot sample " + std::to_string(count) + " roots from " +
                                                std::to_string(node_count) + " nodes");
  }
  std::vector<NodeId> all(node_count);
  std::iota(all.begin(), all.end(), 0);
  std::mt19937_64 rng(seed);
  std::vector<NodeId> out;
  std::sample(all.begin(), all.end(), std::back_inserter(out), static_cast<std::ptrdiff_t>(count), rng);
  return out;
}

double sliced_distance(const PreparedGraph& pg, std::span<const NodeId> roots, const DiscreteMeasure& mu,
                       const DiscreteMeasure& nu, double p, Variant variant) {
  if (roots.empty()) throw Error(ErrorKind::InvalidArgument, "sliced distance needs at least one root");
  // Plain sum in root order, matching sliced_distance_matrix bit for bit.
  double acc = 0.0;
  for (NodeId r : roots) {
    const auto ctx = pg.at(r);
    const auto u = gamma_mass(ctx->structure, mu);
    const auto v = gamma_mass(ctx->structure, nu);
    acc += distance(ctx->prep, u, v, p, variant);
  }
  return roots.size() > 1 ? acc / static_cast<double>(roots.size()) : acc;
}

EquivalenceConstants equivalence_constants(double total_length, double p) {
  check_exponent(p, false);
  if (std::isnan(total_length) || total_length < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "total length must be nonnegative");
  }
  const double lp1 = std::pow(total_length, p - 1.0);
  const double c1 = std::pow(std::min(1.0, lp1) / (1.0 + std::pow(total_length, p)), 1.0 / p);
  const double c2 = std::pow(std::max(1.0, lp1), 1.0 / p);
  return {c1, c2, total_length == 0.0};
}

}  // namespace gsobolev
