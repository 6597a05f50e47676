#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "gsobolev/error.hpp"
#include "gsobolev/graph.hpp"
#include "gsobolev/measure.hpp"

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(GSOBOLEV_DATA_DIR) + "/" + name; }

inline gsobolev::Graph graph_from(const std::string& text) {
  std::istringstream in(text);
  return gsobolev::parse_graph(in);
}

// z0 - a - b with unit lengths.
inline gsobolev::Graph path_graph(double scale = 1.0) {
  return gsobolev::Graph(3, {{0, 1, scale}, {1, 2, scale}});
}

inline gsobolev::DiscreteMeasure dirac(gsobolev::NodeId node, std::size_t n) {
  return gsobolev::DiscreteMeasure("d" + std::to_string(node), {{node, 1.0}}, n);
}

inline gsobolev::DiscreteMeasure measure(std::vector<gsobolev::Atom> atoms, std::size_t n) {
  return gsobolev::DiscreteMeasure("m", std::move(atoms), n);
}

template <typename Fn>
gsobolev::ErrorKind error_kind(Fn&& fn) {
  try {
    fn();
  } catch (const gsobolev::Error& e) {
    return e.kind();
  }
  throw std::logic_error("expected gsobolev::Error");
}

}  // namespace testing
