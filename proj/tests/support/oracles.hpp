// Independent reference implementations the unit and acceptance suites check
// the library against. Everything here deliberately avoids the production
// code paths: plain per-pair Bernoulli sampling, queue BFS over plain
// adjacency lists, brute-force scans.
#pragma once

#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <vector>

#include "lrp/graph.hpp"
#include "lrp/model.hpp"

namespace lrp::test {

/// Adjacency lists with implied lattice edges plus the given long edges,
/// built directly from coordinates.
inline std::vector<std::vector<NodeId>> plain_adjacency(const ModelParams& params,
                                                        const std::vector<Edge>& long_edges) {
  const std::int64_t nodes = params.node_count();
  std::vector<std::vector<NodeId>> adj(nodes);
  std::int64_t stride = 1;
  for (int j = 0; j < params.d; ++j) {
    for (NodeId u = 0; u < nodes; ++u) {
      if ((u / stride) % params.side() < params.n) {
        adj[u].push_back(u + stride);
        adj[u + stride].push_back(u);
      }
    }
    stride *= params.side();
  }
  for (const auto& [u, v] : long_edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

/// Per-pair Bernoulli sampler with its own RNG and its own probability
/// evaluation (tabulated once per distance); O(nodes^2).
inline std::vector<Edge> naive_sample_edges(const ModelParams& params, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::int64_t nodes = params.node_count();
  std::vector<GridPoint> pts(nodes);
  for (NodeId u = 0; u < nodes; ++u) pts[u] = grid_point(u, params);

  std::vector<double> prob(params.max_distance() + 1, 0.0);
  for (std::int64_t k = 2; k <= params.max_distance(); ++k) {
    prob[k] = 1.0 - std::exp(-params.beta / std::pow(static_cast<double>(k), params.s));
  }

  std::vector<Edge> edges;
  for (NodeId a = 0; a < nodes; ++a) {
    for (NodeId b = a + 1; b < nodes; ++b) {
      const std::int64_t k = l1_distance(pts[a], pts[b]);
      if (k < 2) continue;
      if (unif(rng) < prob[k]) edges.emplace_back(a, b);
    }
  }
  return edges;
}

/// Queue BFS over plain adjacency; -1 marks unreached.
inline std::vector<std::int64_t> plain_bfs(const std::vector<std::vector<NodeId>>& adj,
                                           NodeId source) {
  std::vector<std::int64_t> dist(adj.size(), -1);
  std::queue<NodeId> queue;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop();
    for (NodeId v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push(v);
      }
    }
  }
  return dist;
}

inline std::vector<std::vector<NodeId>> plain_adjacency(const GridGraph& g) {
  return plain_adjacency(g.params(), {g.long_edges().begin(), g.long_edges().end()});
}

inline std::int64_t plain_diameter(const std::vector<std::vector<NodeId>>& adj) {
  std::int64_t best = 0;
  for (NodeId u = 0; u < static_cast<NodeId>(adj.size()); ++u) {
    for (std::int64_t d : plain_bfs(adj, u)) best = std::max(best, d);
  }
  return best;
}

/// Cut positions by scanning every long edge for every interior i (d = 1).
inline std::int64_t brute_cut_count(const GridGraph& g) {
  const std::int64_t n = g.params().n;
  std::int64_t count = 0;
  for (NodeId i = 1; i <= n - 1; ++i) {
    bool cut = true;
    for (const auto& [u, v] : g.long_edges()) {
      if (u < i && i < v) {
        cut = false;
        break;
      }
    }
    count += cut;
  }
  return count;
}

/// Isolated nodes by direct adjacency inspection (d = 1).
inline std::int64_t brute_isolated_count(const GridGraph& g) {
  const std::int64_t n = g.params().n;
  std::int64_t count = 0;
  for (NodeId i = 0; i <= n; ++i) {
    bool isolated = true;
    for (NodeId v : g.neighbors(i)) {
      if (v != i - 1 && v != i + 1) {
        isolated = false;
        break;
      }
    }
    count += isolated;
  }
  return count;
}

/// Exact probability that a d=1 renormalization certificate is valid:
/// no-edge events of distinct cube pairs involve disjoint node pairs and are
/// independent, so P(valid) is the product over all checked sibling pairs of
/// (1 - exp(-beta * sum 1/gap^s)). Blocks replicate the truncated tiling.
inline double exact_renorm_validity(const ModelParams& params,
                                    const std::vector<std::int64_t>& side_lengths) {
  struct Seg {
    std::int64_t lo, hi;
  };
  auto blocks_of = [](Seg parent, std::int64_t side) {
    std::vector<Seg> out;
    for (std::int64_t lo = parent.lo; lo <= parent.hi; lo += side) {
      out.push_back({lo, std::min(lo + side - 1, parent.hi)});
    }
    return out;
  };
  auto no_edge_prob = [&](const Seg& a, const Seg& b) {
    const Seg& left = a.lo <= b.lo ? a : b;
    const Seg& right = a.lo <= b.lo ? b : a;
    if (left.hi + 1 >= right.lo) return 0.0;  // adjacent blocks share a lattice edge
    double rate = 0.0;
    for (std::int64_t g = right.lo - left.hi; g <= right.hi - left.lo; ++g) {
      const std::int64_t count =
          std::min(left.hi, right.hi - g) - std::max(left.lo, right.lo - g) + 1;
      if (count > 0) rate += static_cast<double>(count) / std::pow(static_cast<double>(g), params.s);
    }
    return std::exp(-params.beta * rate);
  };

  double p_valid = 1.0;
  std::vector<Seg> parents{{0, params.n}};
  for (std::int64_t side : side_lengths) {
    std::vector<Seg> next;
    for (const Seg& parent : parents) {
      const auto children = blocks_of(parent, side);
      for (std::size_t i = 0; i < children.size(); ++i) {
        for (std::size_t j = i + 1; j < children.size(); ++j) {
          p_valid *= 1.0 - no_edge_prob(children[i], children[j]);
        }
      }
      next.insert(next.end(), children.begin(), children.end());
    }
    parents = std::move(next);
  }
  return p_valid;
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // sample variance
  std::int64_t count = 0;

  double std_error() const { return std::sqrt(variance / count); }
};

inline Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.count = static_cast<std::int64_t>(xs.size());
  for (double x : xs) m.mean += x;
  m.mean /= m.count;
  for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
  m.variance = m.count > 1 ? m.variance / (m.count - 1) : 0.0;
  return m;
}

}  // namespace lrp::test
