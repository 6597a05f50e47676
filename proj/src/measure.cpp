#include "gsobolev/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <unordered_set>

#include "gsobolev/error.hpp"
#include "text_io.hpp"

namespace gsobolev {

DiscreteMeasure::DiscreteMeasure(std::string id, std::vector<Atom> atoms, std::size_t node_count,
                                 bool normalize)
    : id_(std::move(id)), atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error(ErrorKind::MassNotNormalized, "measure '" + id_ + "' has no atoms");
  std::unordered_set<NodeId> seen;
  double total = 0.0;
  for (const Atom& a : atoms_) {
    if (a.node < 0 || static_cast<std::size_t>(a.node) >= node_count) {
      throw Error(ErrorKind::NodeOutOfRange, "measure '" + id_ + "' uses node " + std::to_string(a.node));
    }
    if (!seen.insert(a.node).second) {
      throw Error(ErrorKind::InvalidArgument, "measure '" + id_ + "' repeats node " + std::to_string(a.node));
    }
    if (!std::isfinite(a.mass) || a.mass < 0.0) {
      throw Error(ErrorKind::NegativeMass, "measure '" + id_ + "' has mass " + std::to_string(a.mass));
    }
    total += a.mass;
  }
  if (normalize) {
    if (!(total > 0.0)) throw Error(ErrorKind::MassNotNormalized, "measure '" + id_ + "' has zero mass");
    for (Atom& a : atoms_) a.mass /= total;
  } else if (std::abs(total - 1.0) > kMassTolerance) {
    throw Error(ErrorKind::MassNotNormalized, "measure '" + id_ + "' sums to " + std::to_string(total));
  }
}

std::vector<DiscreteMeasure> parse_measures(std::istream& in, const Graph& g, bool normalize) {
  std::vector<DiscreteMeasure> out;
  std::string line;
  std::size_t line_no = 0;
  while (detail::next_data_line(in, line, line_no)) {
    const auto fields = detail::split_fields(line, "\t");
    if (fields.size() < 3 || fields.size() % 2 == 0) {
      detail::parse_fail(line_no, "expected 'id<TAB>node<TAB>mass' followed by node/mass pairs");
    }
    std::vector<Atom> atoms;
    for (std::size_t i = 1; i + 1 < fields.size(); i += 2) {
      const auto node = detail::parse_number<long long>(fields[i], line_no);
      const auto mass = detail::parse_number<double>(fields[i + 1], line_no);
      if (node < 0 || static_cast<std::size_t>(node) >= g.node_count()) {
        throw Error(ErrorKind::NodeOutOfRange, "line " + std::to_string(line_no) + ": node " +
                                                   std::to_string(node) + " outside graph");
      }
      atoms.push_back({static_cast<NodeId>(node), mass});
    }
    out.emplace_back(std::string(fields[0]), std::move(atoms), g.node_count(), normalize);
  }
  return out;
}

std::vector<DiscreteMeasure> load_measures(const std::filesystem::path& path, const Graph& g,
                                           bool normalize) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open measure file " + path.string());
  return parse_measures(in, g, normalize);
}

void write_measures(std::ostream& out, std::span<const DiscreteMeasure> measures) {
  out << std::setprecision(17);
  for (const auto& m : measures) {
    out << m.id();
    for (const Atom& a : m.atoms()) out << '\t' << a.node << '\t' << a.mass;
    out << '\n';
  }
}

SparseEdgeVector::SparseEdgeVector(NodeId root, std::vector<Entry> entries)
    : root_(root), entries_(std::move(entries)) {
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (!(entries_[i - 1].first < entries_[i].first)) {
      throw Error(ErrorKind::InvalidArgument, "sparse edge vector keys must be strictly increasing");
    }
  }
}

double SparseEdgeVector::value(EdgeId e) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), e,
                                   [](const Entry& a, EdgeId key) { return a.first < key; });
  return it != entries_.end() && it->first == e ? it->second : 0.0;
}

SparseEdgeVector gamma_mass(const RootedStructure& rs, const DiscreteMeasure& mu) {
  std::vector<SparseEdgeVector::Entry> raw;
  for (const Atom& a : mu.atoms()) {
    if (a.node < 0 || static_cast<std::size_t>(a.node) >= rs.node_count()) {
      throw Error(ErrorKind::NodeOutOfRange, "measure node outside rooted structure");
    }
    for (NodeId v = a.node; v != rs.root; v = rs.parent[static_cast<std::size_t>(v)]) {
      raw.emplace_back(rs.parent_edge[static_cast<std::size_t>(v)], a.mass);
    }
  }
  std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<SparseEdgeVector::Entry> merged;
  for (const auto& [e, m] : raw) {
    if (!merged.empty() && merged.back().first == e) {
      merged.back().second += m;
    } else {
      merged.emplace_back(e, m);
    }
  }
  return SparseEdgeVector(rs.root, std::move(merged));
}

std::shared_ptr<const SparseEdgeVector> GammaCache::get(const RootedStructure& rs, std::size_t index,
                                                        const DiscreteMeasure& mu) {
  const auto key = std::make_pair(rs.root, index);
  {
    std::shared_lock lock(mutex_);
    if (auto it = vectors_.find(key); it != vectors_.end()) return it->second;
  }
  auto fresh = std::make_shared<const SparseEdgeVector>(gamma_mass(rs, mu));
  std::unique_lock lock(mutex_);
  return vectors_.try_emplace(key, std::move(fresh)).first->second;
}

std::size_t GammaCache::size() const {
  std::shared_lock lock(mutex_);
  return vectors_.size();
}

}  // namespace gsobolev
