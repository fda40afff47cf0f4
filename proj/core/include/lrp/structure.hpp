#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lrp/graph.hpp"

namespace lrp {

/// Edge counts by L1 length, k = 1..d*n. Index 0 is unused; counts[1] is the
/// deterministic lattice-edge count.
struct EdgeLengthHistogram {
  std::vector<std::int64_t> counts;

  std::int64_t max_length() const { return static_cast<std::int64_t>(counts.size()) - 1; }
  std::int64_t long_edge_total() const;
};

EdgeLengthHistogram edge_length_histogram(const GridGraph& g);

/// Sum of k * counts[k] over k > n^(1 - psi). Requires 0 < psi < 1.
std::int64_t tail_sum(const EdgeLengthHistogram& h, double psi, const ModelParams& params);

/// Interior positions no edge spans (d = 1 only): i in {1..n-1} is a cut node
/// iff no edge (j, k) has j < i < k. Computed by a difference-array sweep over
/// long-edge spans, O(n + edges).
struct CutNodeReport {
  std::int64_t count = 0;
  std::vector<NodeId> positions;
};
CutNodeReport cut_nodes(const GridGraph& g);

/// Nodes adjacent to nothing but their lattice neighbors (d = 1 only).
std::int64_t isolated_node_count(const GridGraph& g);

/// Quotient of the path {0..n} by consecutive blocks of `length` nodes
/// (final block truncated). Non-adjacent blocks are joined iff some original
/// edge joins them; adjacent blocks are always joined. d = 1 only.
struct IntervalDecomposition {
  std::int64_t interval_length = 0;
  std::vector<std::vector<std::int64_t>> quotient_adjacency;
  std::vector<std::int64_t> isolated_intervals;
  /// Cut nodes of the subgraph induced by each block, using only edges
  /// internal to the block.
  std::vector<std::int64_t> local_cut_counts;

  std::int64_t interval_count() const {
    return static_cast<std::int64_t>(quotient_adjacency.size());
  }
};
IntervalDecomposition interval_decomposition(const GridGraph& g, std::int64_t length);

/// Number of nodes within `radius` hops of `center` (truncated BFS).
std::int64_t ball_size(const GridGraph& g, NodeId center, std::int64_t radius);

/// Per-realization summary. Cut/isolated statistics exist only for d = 1;
/// ball2_size counts nodes within two hops of the box center.
struct StructureStats {
  std::optional<std::int64_t> cut_nodes;
  std::optional<std::int64_t> isolated_nodes;
  std::optional<double> isolated_fraction;
  double degree_mean = 0.0;
  std::int64_t degree_max = 0;
  std::int64_t ball2_size = 0;
  NodeId ball2_center = 0;
};
StructureStats compute_structure_stats(const GridGraph& g);

}  // namespace lrp
