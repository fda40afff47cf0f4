#include "lrp/structure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lrp/bfs.hpp"

namespace lrp {

namespace {

void require_line(const GridGraph& g, const char* op) {
  if (g.params().d != 1) {
    throw std::invalid_argument(std::string(op) + ": defined for d = 1 only");
  }
}

}  // namespace

std::int64_t EdgeLengthHistogram::long_edge_total() const {
  std::int64_t total = 0;
  for (std::size_t k = 2; k < counts.size(); ++k) total += counts[k];
  return total;
}

EdgeLengthHistogram edge_length_histogram(const GridGraph& g) {
  const ModelParams& p = g.params();
  EdgeLengthHistogram h;
  h.counts.assign(p.max_distance() + 1, 0);
  h.counts[1] = g.lattice_edge_count();
  GridPoint a, b;
  for (const auto& e : g.long_edges()) {
    grid_point_into(e.first, p, a);
    grid_point_into(e.second, p, b);
    ++h.counts[l1_distance(a, b)];
  }
  return h;
}

std::int64_t tail_sum(const EdgeLengthHistogram& h, double psi, const ModelParams& params) {
  if (!(psi > 0.0) || !(psi < 1.0)) throw std::invalid_argument("tail_sum: psi must be in (0,1)");
  const double threshold = std::pow(static_cast<double>(params.n), 1.0 - psi);
  std::int64_t sum = 0;
  for (std::int64_t k = 1; k <= h.max_length(); ++k) {
    if (static_cast<double>(k) > threshold) sum += k * h.counts[k];
  }
  return sum;
}

CutNodeReport cut_nodes(const GridGraph& g) {
  require_line(g, "cut_nodes");
  const std::int64_t n = g.params().n;

  // A long edge (j, k) blocks exactly the interior positions j < i < k.
  std::vector<std::int32_t> delta(n + 1, 0);
  for (const auto& e : g.long_edges()) {
    ++delta[e.first + 1];
    --delta[e.second];
  }
  CutNodeReport report;
  std::int64_t cover = 0;
  for (NodeId i = 1; i <= n - 1; ++i) {
    cover += delta[i];
    if (cover == 0) {
      ++report.count;
      report.positions.push_back(i);
    }
  }
  return report;
}

std::int64_t isolated_node_count(const GridGraph& g) {
  require_line(g, "isolated_nodes");
  const std::int64_t n = g.params().n;
  std::int64_t count = 0;
  for (NodeId i = 0; i <= n; ++i) {
    const std::int64_t lattice_degree = (i > 0) + (i < n);
    if (g.degree(i) == lattice_degree) ++count;
  }
  return count;
}

IntervalDecomposition interval_decomposition(const GridGraph& g, std::int64_t length) {
  require_line(g, "interval_decomposition");
  const std::int64_t n = g.params().n;
  if (length < 1 || length > n + 1) {
    throw std::invalid_argument("interval_decomposition: length must be in [1, n+1]");
  }

  const std::int64_t blocks = (n + 1 + length - 1) / length;
  IntervalDecomposition dec;
  dec.interval_length = length;
  dec.quotient_adjacency.assign(blocks, {});
  dec.local_cut_counts.assign(blocks, 0);

  // Adjacent blocks are always joined.
  for (std::int64_t i = 0; i + 1 < blocks; ++i) {
    dec.quotient_adjacency[i].push_back(i + 1);
    dec.quotient_adjacency[i + 1].push_back(i);
  }

  // Long edges crossing non-adjacent blocks join them in the quotient;
  // block-internal edges feed the local cut sweep.
  std::vector<std::int32_t> local_delta(n + 2, 0);
  for (const auto& e : g.long_edges()) {
    const std::int64_t bi = e.first / length;
    const std::int64_t bj = e.second / length;
    if (bi == bj) {
      ++local_delta[e.first + 1];
      --local_delta[e.second];
    } else if (bj - bi > 1) {
      dec.quotient_adjacency[bi].push_back(bj);
      dec.quotient_adjacency[bj].push_back(bi);
    }
  }
  for (auto& adj : dec.quotient_adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }

  for (std::int64_t b = 0; b < blocks; ++b) {
    const NodeId lo = b * length;
    const NodeId hi = std::min(lo + length - 1, n);
    std::int64_t cover = 0;
    for (NodeId i = lo + 1; i <= hi - 1; ++i) {
      cover += local_delta[i];
      if (cover == 0) ++dec.local_cut_counts[b];
    }
    // cover ends at zero within a block: spans never leave it.
  }

  for (std::int64_t b = 0; b < blocks; ++b) {
    bool isolated = true;
    for (std::int64_t q : dec.quotient_adjacency[b]) {
      if (q != b - 1 && q != b + 1) {
        isolated = false;
        break;
      }
    }
    if (isolated) dec.isolated_intervals.push_back(b);
  }
  return dec;
}

std::int64_t ball_size(const GridGraph& g, NodeId center, std::int64_t radius) {
  if (radius < 0) throw std::invalid_argument("ball_size: radius must be >= 0");
  BfsWorkspace ws;
  const DistanceField& field =
      ws.run(g, center,
             radius >= kUnreached ? kUnreached : static_cast<std::uint32_t>(radius));
  std::int64_t count = 0;
  for (std::uint32_t d : field.dist) count += (d != kUnreached);
  return count;
}

StructureStats compute_structure_stats(const GridGraph& g) {
  const ModelParams& p = g.params();
  StructureStats stats;
  if (p.d == 1) {
    stats.cut_nodes = cut_nodes(g).count;
    stats.isolated_nodes = isolated_node_count(g);
    stats.isolated_fraction =
        static_cast<double>(*stats.isolated_nodes) / static_cast<double>(p.node_count());
  }

  const std::int64_t nodes = p.node_count();
  std::int64_t degree_sum = 0;
  for (NodeId u = 0; u < nodes; ++u) {
    const std::int64_t deg = g.degree(u);
    degree_sum += deg;
    stats.degree_max = std::max(stats.degree_max, deg);
  }
  stats.degree_mean = static_cast<double>(degree_sum) / static_cast<double>(nodes);

  GridPoint center(p.d, p.n / 2);
  stats.ball2_center = node_id(center, p);
  stats.ball2_size = ball_size(g, stats.ball2_center, 2);
  return stats;
}

}  // namespace lrp
