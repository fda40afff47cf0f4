#include "lrp/diameter.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "lrp/errors.hpp"

namespace lrp {

namespace {

void check_budget(const BfsWorkspace& ws, std::uint64_t budget) {
  if (budget != 0 && ws.visited_total() > budget) {
    throw ResourceLimitError(
        "exact_diameter: visit budget exhausted; use estimate_diameter for a lower bound");
  }
}

DiameterResult all_source_diameter(const GridGraph& g) {
  const std::int64_t nodes = g.node_count();
  BfsWorkspace ws;
  DiameterResult result;
  for (NodeId u = 0; u < nodes; ++u) {
    const DistanceField& field = ws.run(g, u);
    ++result.sources_used;
    if (field.eccentricity > result.value) {
      result.value = field.eccentricity;
      result.witness_u = u;
      result.witness_v = field.farthest;
    }
  }
  result.mode = DiameterMode::exact;
  result.upper_bound = result.value;
  return result;
}

// Double-sweep initialization followed by iFUB: process fringe nodes of the
// midpoint BFS from the deepest level inward, keeping lb = best eccentricity
// seen; once lb exceeds 2*(level-1) no deeper node can beat it.
DiameterResult pruned_diameter(const GridGraph& g, std::uint64_t budget) {
  BfsWorkspace ws;
  DiameterResult result;

  // Sweep 1: from node 0 to its farthest a; sweep 2: from a, recording parents
  // to walk to the midpoint of a longest shortest path.
  const DistanceField& f0 = ws.run(g, 0);
  check_budget(ws, budget);
  const NodeId a = f0.farthest;
  DistanceField fa = ws.run(g, a);
  check_budget(ws, budget);
  result.sources_used = 2;
  result.value = fa.eccentricity;
  result.witness_u = a;
  result.witness_v = fa.farthest;

  NodeId mid = fa.farthest;
  for (std::uint32_t step = 0; step < fa.eccentricity / 2; ++step) {
    // Any neighbor one level closer to a is on a shortest path.
    for (NodeId w : g.neighbors(mid)) {
      if (fa.dist[w] + 1 == fa.dist[mid]) {
        mid = w;
        break;
      }
    }
  }

  const DistanceField& fm = ws.run(g, mid);
  check_budget(ws, budget);
  ++result.sources_used;
  if (fm.eccentricity > result.value) {
    result.value = fm.eccentricity;
    result.witness_u = mid;
    result.witness_v = fm.farthest;
  }

  // Fringe sets by depth from the midpoint.
  std::vector<std::vector<NodeId>> levels(fm.eccentricity + 1);
  for (NodeId u = 0; u < g.node_count(); ++u) levels[fm.dist[u]].push_back(u);

  std::int64_t ub = 2 * static_cast<std::int64_t>(fm.eccentricity);
  for (std::int64_t i = fm.eccentricity; ub > result.value && i >= 1; --i) {
    for (NodeId u : levels[i]) {
      const DistanceField& fu = ws.run(g, u);
      check_budget(ws, budget);
      ++result.sources_used;
      if (fu.eccentricity > result.value) {
        result.value = fu.eccentricity;
        result.witness_u = u;
        result.witness_v = fu.farthest;
      }
    }
    if (result.value > 2 * (i - 1)) break;
    ub = 2 * (i - 1);
  }

  result.mode = DiameterMode::exact;
  result.upper_bound = result.value;
  return result;
}

}  // namespace

DiameterResult exact_diameter(const GridGraph& g, const DiameterOptions& options) {
  if (options.force_all_source && options.force_pruned) {
    throw std::invalid_argument("exact_diameter: conflicting route overrides");
  }
  const std::int64_t nodes = g.node_count();
  if (options.force_all_source) {
    if (nodes > options.all_source_cap) {
      throw ResourceLimitError("exact_diameter: " + std::to_string(nodes) +
                               " nodes exceed the all-source cap; use the pruned route or "
                               "estimate_diameter");
    }
    return all_source_diameter(g);
  }
  if (!options.force_pruned && nodes <= options.all_source_below) {
    return all_source_diameter(g);
  }
  return pruned_diameter(g, options.visit_budget);
}

DiameterResult estimate_diameter(const GridGraph& g, std::int64_t source_count) {
  if (source_count < 1) throw std::invalid_argument("estimate_diameter: need >= 1 source");
  const std::int64_t nodes = g.node_count();
  source_count = std::min(source_count, nodes);

  BfsWorkspace ws;
  DiameterResult result;
  result.mode = DiameterMode::lower_bound;

  std::vector<char> used(nodes, 0);
  NodeId source = 0;
  for (std::int64_t i = 0; i < source_count; ++i) {
    used[source] = 1;
    const DistanceField& field = ws.run(g, source);
    ++result.sources_used;
    if (field.eccentricity > result.value) {
      result.value = field.eccentricity;
      result.witness_u = source;
      result.witness_v = field.farthest;
    }

    if (i + 1 >= source_count) break;
    if (i == 0 && !used[nodes - 1]) {
      source = nodes - 1;  // far corner second
      continue;
    }
    // Farthest unused node from the last source, smallest id on ties.
    NodeId best = -1;
    std::uint32_t best_dist = 0;
    for (NodeId v = 0; v < nodes; ++v) {
      if (!used[v] && (best == -1 || field.dist[v] > best_dist)) {
        best = v;
        best_dist = field.dist[v];
      }
    }
    if (best == -1) break;  // every node already used
    source = best;
  }

  result.upper_bound = 2 * result.value;
  return result;
}

}  // namespace lrp
