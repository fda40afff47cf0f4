#include "lrp/bfs.hpp"

#include <stdexcept>

namespace lrp {

const DistanceField& BfsWorkspace::run(const GridGraph& g, NodeId source,
                                       std::uint32_t max_radius) {
  const std::int64_t nodes = g.node_count();
  if (source < 0 || source >= nodes) throw std::out_of_range("bfs: source out of range");

  field_.source = source;
  field_.dist.assign(nodes, kUnreached);
  field_.dist[source] = 0;
  field_.eccentricity = 0;
  field_.farthest = source;

  current_.clear();
  next_.clear();
  current_.push_back(source);
  ++visited_total_;

  std::uint32_t level = 0;
  while (!current_.empty() && level < max_radius) {
    ++level;
    for (NodeId u : current_) {
      for (NodeId v : g.neighbors(u)) {
        if (field_.dist[v] == kUnreached) {
          field_.dist[v] = level;
          next_.push_back(v);
        }
      }
    }
    visited_total_ += next_.size();
    if (!next_.empty()) {
      field_.eccentricity = level;
      field_.farthest = next_.front();
      for (NodeId v : next_) {
        if (v < field_.farthest) field_.farthest = v;
      }
    }
    current_.swap(next_);
    next_.clear();
  }
  return field_;
}

DistanceField bfs(const GridGraph& g, NodeId source) {
  BfsWorkspace ws;
  return ws.run(g, source);
}

std::int64_t corner_path_length(const GridGraph& g) {
  BfsWorkspace ws;
  const DistanceField& field = ws.run(g, 0);
  return field.dist[g.node_count() - 1];
}

}  // namespace lrp
