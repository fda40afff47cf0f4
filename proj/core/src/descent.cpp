#include "lrp/descent.hpp"

#include <cmath>
#include <stdexcept>

namespace lrp {

double descent_threshold(const ModelParams& params, int c) {
  if (c < 0) throw std::invalid_argument("descent_threshold: c must be >= 0");
  const double exponent = params.d / std::pow(2.0, c);
  return std::exp(std::pow(std::log(static_cast<double>(params.n)), exponent));
}

NodeId descent_step(const GridGraph& g, NodeId current) {
  const ModelParams& params = g.params();
  if (current < 0 || current >= g.node_count()) {
    throw std::out_of_range("descent_step: node out of range");
  }

  NodeId best = current;
  std::int64_t best_norm = node_norm(current, params);
  auto consider = [&](NodeId v) {
    const std::int64_t norm = node_norm(v, params);
    if (norm < best_norm || (norm == best_norm && v < best)) {
      best = v;
      best_norm = norm;
    }
  };
  // Candidates may repeat across neighborhoods; the argmin does not care.
  for (NodeId w : g.neighbors(current)) {
    consider(w);
    for (NodeId z : g.neighbors(w)) consider(z);
  }
  return best;
}

DescentTrace descent_run(const GridGraph& g, NodeId start, int c, std::int64_t max_steps) {
  if (max_steps < 1) throw std::invalid_argument("descent_run: max_steps must be >= 1");

  DescentTrace trace;
  trace.start = start;
  trace.threshold = descent_threshold(g.params(), c);
  trace.chain.push_back(start);
  trace.norms.push_back(node_norm(start, g.params()));
  if (static_cast<double>(trace.norms.back()) <= trace.threshold) {
    trace.steps_to_threshold = 0;
  }

  for (std::int64_t step = 1; step <= max_steps; ++step) {
    const NodeId cur = trace.chain.back();
    const std::int64_t cur_norm = trace.norms.back();
    const NodeId next = descent_step(g, cur);
    if (next == cur) break;  // fixed point; nothing below in two hops

    const std::int64_t next_norm = node_norm(next, g.params());
    trace.chain.push_back(next);
    trace.norms.push_back(next_norm);
    if (!trace.steps_to_threshold && static_cast<double>(next_norm) <= trace.threshold) {
      trace.steps_to_threshold = step;
    }
    if (next_norm == cur_norm && trace.steps_to_threshold) break;
  }
  return trace;
}

}  // namespace lrp
