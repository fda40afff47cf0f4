#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lrp/graph.hpp"

namespace lrp {

/// Record of one greedy norm-descent run: the visited chain, the origin norm
/// at each element, and the first step at which the norm fell to the
/// threshold exp((log n)^(d / 2^c)).
struct DescentTrace {
  NodeId start = 0;
  std::vector<NodeId> chain;
  std::vector<std::int64_t> norms;
  std::optional<std::int64_t> steps_to_threshold;
  double threshold = 0.0;
};

/// exp((log n)^(d / 2^c)), natural logs.
double descent_threshold(const ModelParams& params, int c);

/// The minimum-norm node in the closed 2-ball around `current` (paths of
/// length <= 2, including current itself); ties broken toward the smallest
/// id. The result's norm never exceeds the current norm.
NodeId descent_step(const GridGraph& g, NodeId current);

/// Iterates descent_step from `start`, recording norms. Stops at a fixed
/// point, after max_steps, or once the threshold is met and a step no longer
/// strictly decreases the norm.
DescentTrace descent_run(const GridGraph& g, NodeId start, int c, std::int64_t max_steps);

}  // namespace lrp
