#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lrp/model.hpp"

namespace lrp {

using Edge = std::pair<NodeId, NodeId>;

/// One realization of the model: the implicit lattice edges of {0..n}^d plus
/// the sampled long-range edges, exposed as a CSR adjacency with sorted
/// neighbor lists. Immutable after construction and safe to share across
/// threads.
class GridGraph {
 public:
  /// Builds the graph from its long-range edges (distance >= 2 pairs).
  /// Edges are canonicalized to (min, max) and sorted; self-loops, duplicates,
  /// out-of-range ids and distance-1 pairs are rejected.
  static GridGraph from_long_edges(const ModelParams& params, std::uint64_t trial,
                                   std::vector<Edge> long_edges);

  const ModelParams& params() const { return params_; }
  std::uint64_t trial() const { return trial_; }
  std::int64_t node_count() const { return static_cast<std::int64_t>(offsets_.size()) - 1; }

  std::span<const Edge> long_edges() const { return long_edges_; }
  std::int64_t long_edge_count() const { return static_cast<std::int64_t>(long_edges_.size()); }
  std::int64_t lattice_edge_count() const { return params_.lattice_edge_count(); }
  std::int64_t edge_count() const { return lattice_edge_count() + long_edge_count(); }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
  }
  std::int64_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

  /// Membership test via binary search in the sorted neighbor list.
  bool has_edge(NodeId u, NodeId v) const;

  /// Structural self-check: symmetry, sortedness, no self-loops or duplicates,
  /// every lattice pair present. Throws std::logic_error on violation.
  void audit() const;

 private:
  GridGraph() = default;

  ModelParams params_;
  std::uint64_t trial_ = 0;
  std::vector<Edge> long_edges_;
  std::vector<std::int64_t> offsets_;
  std::vector<NodeId> adj_;
};

}  // namespace lrp
