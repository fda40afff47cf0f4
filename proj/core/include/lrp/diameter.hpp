#pragma once

#include <cstdint>

#include "lrp/bfs.hpp"
#include "lrp/graph.hpp"

namespace lrp {

enum class DiameterMode { exact, lower_bound };

struct DiameterResult {
  std::int64_t value = 0;
  DiameterMode mode = DiameterMode::exact;
  /// A pair realizing `value` (re-checkable with one BFS from witness_u).
  NodeId witness_u = 0;
  NodeId witness_v = 0;
  /// BFS sources expended.
  std::int64_t sources_used = 0;
  /// Equal to value in exact mode; 2*value for a lower bound.
  std::int64_t upper_bound = 0;
};

struct DiameterOptions {
  /// Route selection: instances up to this many nodes run all-source BFS,
  /// larger ones run the pruned eccentricity algorithm. Both are exact.
  std::int64_t all_source_below = 2048;
  /// Hard ceiling for the all-source route when it is forced.
  std::int64_t all_source_cap = std::int64_t(1) << 16;
  /// Total BFS node visits the pruned route may spend; 0 means unlimited.
  /// Exceeding it raises ResourceLimitError suggesting estimate_diameter.
  std::uint64_t visit_budget = 0;
  bool force_all_source = false;
  bool force_pruned = false;
};

/// Exact diameter. Small graphs take the all-source route; larger ones run a
/// double-sweep-initialized eccentricity pruning (iFUB) that refutes candidate
/// eccentricities level by level. The two routes return identical values.
DiameterResult exact_diameter(const GridGraph& g, const DiameterOptions& options = {});

/// Lower bound from k BFS sources: node 0, the far corner, then farthest-point
/// iterates (ties broken toward the smallest id). The true diameter lies in
/// [value, 2*value].
DiameterResult estimate_diameter(const GridGraph& g, std::int64_t source_count);

}  // namespace lrp
