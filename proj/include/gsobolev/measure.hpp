#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gsobolev/graph.hpp"

namespace gsobolev {

inline constexpr double kMassTolerance = 1e-9;

struct Atom {
  NodeId node;
  double mass;
};

// Probability measure supported on graph nodes.
class DiscreteMeasure {
 public:
  // Validates node range, distinct nodes, nonnegative masses and unit total.
  // With `normalize` the masses are rescaled to sum to one instead of the
  // total being checked.
  DiscreteMeasure(std::string id, std::vector<Atom> atoms, std::size_t node_count,
                  bool normalize = false);

  const std::string& id() const noexcept { return id_; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t support_size() const noexcept { return atoms_.size(); }

 private:
  std::string id_;
  std::vector<Atom> atoms_;
};

// One measure per line: "id TAB node TAB mass [TAB node TAB mass ...]".
std::vector<DiscreteMeasure> parse_measures(std::istream& in, const Graph& g, bool normalize = false);
std::vector<DiscreteMeasure> load_measures(const std::filesystem::path& path, const Graph& g,
                                           bool normalize = false);
void write_measures(std::ostream& out, std::span<const DiscreteMeasure> measures);

// e -> mu(gamma_e) over the edges some support's root path runs through.
// Entries are sorted by edge id; edges absent from the vector carry zero.
class SparseEdgeVector {
 public:
  using Entry = std::pair<EdgeId, double>;

  SparseEdgeVector() = default;
  SparseEdgeVector(NodeId root, std::vector<Entry> entries);

  NodeId root() const noexcept { return root_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  double value(EdgeId e) const;

 private:
  NodeId root_ = kNoNode;
  std::vector<Entry> entries_;
};

SparseEdgeVector gamma_mass(const RootedStructure& rs, const DiscreteMeasure& mu);

// Cumulative vectors keyed by (root, measure index). Lookups take a shared
// lock; inserts are exclusive.
class GammaCache {
 public:
  std::shared_ptr<const SparseEdgeVector> get(const RootedStructure& rs, std::size_t index,
                                              const DiscreteMeasure& mu);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::pair<NodeId, std::size_t>, std::shared_ptr<const SparseEdgeVector>> vectors_;
};

}  // namespace gsobolev
