#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lrp/graph.hpp"
#include "lrp/model.hpp"

namespace lrp {

/// One displacement class: all unordered node pairs {x, x + delta} with both
/// endpoints in the box share the same edge probability. `delta` is
/// lex-positive (first nonzero coordinate > 0), so each long-range pair
/// belongs to exactly one class.
struct OffsetClass {
  std::vector<std::int64_t> delta;
  std::int64_t pair_count = 0;  // prod_j (n+1 - |delta_j|)
  double prob = 0.0;
  std::int64_t distance = 0;  // sum_j |delta_j|
};

/// The canonical enumeration of all offset classes for one parameter set,
/// flattened for reuse across trials. Order is lexicographic over delta,
/// which fixes the order in which the sampler consumes randomness.
class OffsetTable {
 public:
  explicit OffsetTable(const ModelParams& params);

  const ModelParams& params() const { return params_; }
  std::size_t size() const { return pair_counts_.size(); }

  std::span<const std::int64_t> delta(std::size_t i) const {
    return {deltas_.data() + i * params_.d, static_cast<std::size_t>(params_.d)};
  }
  std::int64_t pair_count(std::size_t i) const { return pair_counts_[i]; }
  double prob(std::size_t i) const { return probs_[i]; }
  std::int64_t distance(std::size_t i) const { return distances_[i]; }

  /// Total unordered pairs at distance >= 2, summed over classes.
  std::int64_t total_pair_count() const;

 private:
  ModelParams params_;
  std::vector<std::int64_t> deltas_;
  std::vector<std::int64_t> pair_counts_;
  std::vector<double> probs_;
  std::vector<std::int64_t> distances_;
};

/// Materialized offset classes in canonical order (convenience wrapper).
std::vector<OffsetClass> enumerate_offsets(const ModelParams& params);

struct SampleOptions {
  /// Hard cap on realized long edges; exceeding it raises ResourceLimitError
  /// naming the offending class.
  std::int64_t edge_cap = std::int64_t(1) << 31;
  /// Classes with probability above this are enumerated densely instead of
  /// skip-sampled, keeping log(1-p) well-conditioned.
  double dense_threshold = 0.99;
};

/// Samples a realization in expected time O(nodes + realized edges): within
/// each class the surviving pair indices are drawn by geometric skips
/// (cursor advances by 1 + floor(ln(U)/ln(1-p))), then decoded through the
/// class's mixed-radix pair indexing. Deterministic function of
/// (params.seed, trial).
GridGraph sample_graph(const OffsetTable& table, std::uint64_t trial,
                       const SampleOptions& options = {});
GridGraph sample_graph(const ModelParams& params, std::uint64_t trial,
                       const SampleOptions& options = {});

struct CoupledOptions {
  /// The coupled sampler enumerates all O(nodes^2) pairs; refuse instances
  /// above this many nodes.
  std::int64_t node_cap = 8192;
};

/// Common-random-numbers sampler: every unordered pair draws its uniform from
/// a stateless hash of (seed, trial, idA, idB), so for a fixed (seed, trial)
/// the realized edge set is monotone nondecreasing in beta. Intended for
/// small instances and coupling experiments.
GridGraph sample_graph_coupled(const ModelParams& params, std::uint64_t trial,
                               const CoupledOptions& options = {});

}  // namespace lrp
