#include "lrp/model.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace lrp {

namespace {

// Node counts are kept well below 2^62 so index sums and CSR offsets cannot
// overflow anywhere downstream.
constexpr std::int64_t kMaxNodeCount = std::int64_t(1) << 62;
constexpr std::int64_t kMaxHops = std::numeric_limits<std::int32_t>::max();

std::int64_t checked_node_count(int d, std::int64_t n) {
  std::int64_t count = 1;
  const std::int64_t side = n + 1;
  for (int j = 0; j < d; ++j) {
    if (count > kMaxNodeCount / side) {
      throw std::invalid_argument("ModelParams: (n+1)^d overflows the node index range (n=" +
                                  std::to_string(n) + ", d=" + std::to_string(d) + ")");
    }
    count *= side;
  }
  return count;
}

}  // namespace

ModelParams::ModelParams(int d_, std::int64_t n_, double s_, double beta_, std::uint64_t seed_)
    : d(d_), n(n_), s(s_), beta(beta_), seed(seed_) {
  if (d < 1) throw std::invalid_argument("ModelParams: d must be >= 1");
  if (n < 1) throw std::invalid_argument("ModelParams: n must be >= 1");
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("ModelParams: s must be > 0");
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("ModelParams: beta must be >= 0");
  }
  checked_node_count(d, n);
  if (max_distance() > kMaxHops) {
    throw std::invalid_argument("ModelParams: d*n exceeds the 32-bit hop range");
  }
}

std::int64_t ModelParams::node_count() const { return checked_node_count(d, n); }

std::int64_t ModelParams::lattice_edge_count() const {
  std::int64_t per_axis = n;
  for (int j = 0; j + 1 < d; ++j) per_axis *= side();
  return per_axis * d;
}

std::int64_t l1_distance(const GridPoint& a, const GridPoint& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("l1_distance: dimension mismatch (" + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + ")");
  }
  std::int64_t sum = 0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += std::llabs(a[j] - b[j]);
  return sum;
}

std::int64_t origin_norm(const GridPoint& p) {
  std::int64_t sum = 0;
  for (std::int64_t c : p) sum += c;
  return sum;
}

double edge_probability(std::int64_t k, const ModelParams& params) {
  if (k < 1) throw std::invalid_argument("edge_probability: distance must be >= 1");
  if (k == 1) return 1.0;
  const double rate = params.beta / std::pow(static_cast<double>(k), params.s);
  return -std::expm1(-rate);
}

NodeId node_id(const GridPoint& p, const ModelParams& params) {
  if (static_cast<int>(p.size()) != params.d) {
    throw std::invalid_argument("node_id: point dimension does not match params");
  }
  NodeId id = 0;
  std::int64_t stride = 1;
  for (int j = 0; j < params.d; ++j) {
    if (p[j] < 0 || p[j] > params.n) {
      throw std::out_of_range("node_id: coordinate " + std::to_string(j) + " out of [0, n]");
    }
    id += p[j] * stride;
    stride *= params.side();
  }
  return id;
}

GridPoint grid_point(NodeId id, const ModelParams& params) {
  GridPoint out;
  grid_point_into(id, params, out);
  return out;
}

void grid_point_into(NodeId id, const ModelParams& params, GridPoint& out) {
  if (id < 0 || id >= params.node_count()) {
    throw std::out_of_range("grid_point: node id out of range");
  }
  out.resize(params.d);
  const std::int64_t side = params.side();
  for (int j = 0; j < params.d; ++j) {
    out[j] = id % side;
    id /= side;
  }
}

std::int64_t node_norm(NodeId id, const ModelParams& params) {
  if (id < 0 || id >= params.node_count()) {
    throw std::out_of_range("node_norm: node id out of range");
  }
  const std::int64_t side = params.side();
  std::int64_t sum = 0;
  for (int j = 0; j < params.d; ++j) {
    sum += id % side;
    id /= side;
  }
  return sum;
}

}  // namespace lrp
