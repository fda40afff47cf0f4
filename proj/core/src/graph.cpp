#include "lrp/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lrp {

GridGraph GridGraph::from_long_edges(const ModelParams& params, std::uint64_t trial,
                                     std::vector<Edge> long_edges) {
  const std::int64_t nodes = params.node_count();

  for (auto& e : long_edges) {
    if (e.first > e.second) std::swap(e.first, e.second);
    if (e.first < 0 || e.second >= nodes) {
      throw std::invalid_argument("GridGraph: edge endpoint out of range: (" +
                                  std::to_string(e.first) + ", " + std::to_string(e.second) + ")");
    }
    if (e.first == e.second) {
      throw std::invalid_argument("GridGraph: self-loop at node " + std::to_string(e.first));
    }
  }
  std::sort(long_edges.begin(), long_edges.end());
  if (std::adjacent_find(long_edges.begin(), long_edges.end()) != long_edges.end()) {
    throw std::invalid_argument("GridGraph: duplicate long edge");
  }

  // Long edges must be genuinely long: lattice pairs are implied.
  {
    GridPoint a, b;
    for (const auto& e : long_edges) {
      grid_point_into(e.first, params, a);
      grid_point_into(e.second, params, b);
      if (l1_distance(a, b) < 2) {
        throw std::invalid_argument("GridGraph: pair (" + std::to_string(e.first) + ", " +
                                    std::to_string(e.second) + ") is a lattice edge");
      }
    }
  }

  GridGraph g;
  g.params_ = params;
  g.trial_ = trial;
  g.long_edges_ = std::move(long_edges);

  // Degree pass: lattice degree per node, then long-edge increments.
  std::vector<std::int64_t> degree(nodes, 0);
  const std::int64_t side = params.side();
  for (NodeId u = 0; u < nodes; ++u) {
    NodeId rest = u;
    std::int64_t deg = 0;
    for (int j = 0; j < params.d; ++j) {
      const std::int64_t c = rest % side;
      rest /= side;
      deg += (c > 0) + (c < params.n);
    }
    degree[u] = deg;
  }
  for (const auto& e : g.long_edges_) {
    ++degree[e.first];
    ++degree[e.second];
  }

  g.offsets_.assign(nodes + 1, 0);
  for (NodeId u = 0; u < nodes; ++u) g.offsets_[u + 1] = g.offsets_[u] + degree[u];
  g.adj_.resize(g.offsets_[nodes]);

  // Scatter pass; `cursor` reuses the degree buffer as per-node write heads.
  std::vector<std::int64_t>& cursor = degree;
  for (NodeId u = 0; u < nodes; ++u) cursor[u] = g.offsets_[u];
  for (NodeId u = 0; u < nodes; ++u) {
    NodeId rest = u;
    std::int64_t stride = 1;
    for (int j = 0; j < params.d; ++j) {
      const std::int64_t c = rest % side;
      rest /= side;
      if (c > 0) g.adj_[cursor[u]++] = u - stride;
      if (c < params.n) g.adj_[cursor[u]++] = u + stride;
      stride *= side;
    }
  }
  for (const auto& e : g.long_edges_) {
    g.adj_[cursor[e.first]++] = e.second;
    g.adj_[cursor[e.second]++] = e.first;
  }
  for (NodeId u = 0; u < nodes; ++u) {
    std::sort(g.adj_.begin() + g.offsets_[u], g.adj_.begin() + g.offsets_[u + 1]);
  }
  return g;
}

bool GridGraph::has_edge(NodeId u, NodeId v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

void GridGraph::audit() const {
  const std::int64_t nodes = node_count();
  std::int64_t directed = 0;
  for (NodeId u = 0; u < nodes; ++u) {
    const auto nb = neighbors(u);
    directed += static_cast<std::int64_t>(nb.size());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] == u) throw std::logic_error("audit: self-loop");
      if (i > 0 && nb[i] <= nb[i - 1]) throw std::logic_error("audit: unsorted or duplicate");
      if (!has_edge(nb[i], u)) throw std::logic_error("audit: asymmetric adjacency");
    }
  }
  if (directed != 2 * edge_count()) throw std::logic_error("audit: edge count mismatch");

  // Every lattice pair along each axis must be adjacent.
  const std::int64_t side = params_.side();
  std::int64_t stride = 1;
  for (int j = 0; j < params_.d; ++j) {
    for (NodeId u = 0; u < nodes; ++u) {
      if ((u / stride) % side < params_.n && !has_edge(u, u + stride)) {
        throw std::logic_error("audit: missing lattice edge");
      }
    }
    stride *= side;
  }
}

}  // namespace lrp
