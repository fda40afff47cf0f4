#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "lrp/graph.hpp"

namespace lrp {

inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

/// Hop counts from one source. Graphs are connected, so after an untruncated
/// run every entry is a real distance; truncated runs leave kUnreached beyond
/// the radius.
struct DistanceField {
  NodeId source = 0;
  std::vector<std::uint32_t> dist;
  std::uint32_t eccentricity = 0;
  /// Node realizing the eccentricity; smallest id among the maxima.
  NodeId farthest = 0;
};

/// Flat two-array frontier BFS with reusable buffers. The harness runs
/// millions of traversals; per-call allocation would dominate.
class BfsWorkspace {
 public:
  const DistanceField& run(const GridGraph& g, NodeId source,
                           std::uint32_t max_radius = kUnreached);
  const DistanceField& field() const { return field_; }

  /// Cumulative nodes settled across runs, for visit budgets.
  std::uint64_t visited_total() const { return visited_total_; }

 private:
  DistanceField field_;
  std::vector<NodeId> current_, next_;
  std::uint64_t visited_total_ = 0;
};

/// One-shot convenience wrapper.
DistanceField bfs(const GridGraph& g, NodeId source);

/// Hop count between the all-zero and all-n corners.
std::int64_t corner_path_length(const GridGraph& g);

}  // namespace lrp
