#include "lrp/sampler.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "lrp/errors.hpp"
#include "lrp/rng.hpp"

namespace lrp {

namespace {

std::string delta_to_string(std::span<const std::int64_t> delta) {
  std::string out = "(";
  for (std::size_t j = 0; j < delta.size(); ++j) {
    if (j) out += ",";
    out += std::to_string(delta[j]);
  }
  out += ")";
  return out;
}

}  // namespace

OffsetTable::OffsetTable(const ModelParams& params) : params_(params) {
  const int d = params_.d;
  const std::int64_t n = params_.n;

  std::vector<std::int64_t> delta(d, 0);
  // Lexicographic enumeration; while every emitted coordinate so far is zero
  // the current one may not go negative, which encodes lex-positivity.
  auto recurse = [&](auto&& self, int axis, bool all_zero, std::int64_t dist) -> void {
    if (axis == d) {
      if (dist < 2) return;
      std::int64_t pairs = 1;
      for (int j = 0; j < d; ++j) pairs *= params_.side() - std::llabs(delta[j]);
      deltas_.insert(deltas_.end(), delta.begin(), delta.end());
      pair_counts_.push_back(pairs);
      distances_.push_back(dist);
      probs_.push_back(edge_probability(dist, params_));
      return;
    }
    const std::int64_t lo = all_zero ? 0 : -n;
    for (std::int64_t v = lo; v <= n; ++v) {
      delta[axis] = v;
      self(self, axis + 1, all_zero && v == 0, dist + std::llabs(v));
    }
    delta[axis] = 0;
  };
  recurse(recurse, 0, true, 0);
}

std::int64_t OffsetTable::total_pair_count() const {
  std::int64_t total = 0;
  for (std::int64_t c : pair_counts_) total += c;
  return total;
}

std::vector<OffsetClass> enumerate_offsets(const ModelParams& params) {
  OffsetTable table(params);
  std::vector<OffsetClass> out;
  out.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto delta = table.delta(i);
    out.push_back({{delta.begin(), delta.end()},
                   table.pair_count(i),
                   table.prob(i),
                   table.distance(i)});
  }
  return out;
}

GridGraph sample_graph(const OffsetTable& table, std::uint64_t trial,
                       const SampleOptions& options) {
  const ModelParams& params = table.params();
  const int d = params.d;
  rng::Stream stream(rng::mix(params.seed, trial));

  std::vector<std::int64_t> strides(d);
  strides[0] = 1;
  for (int j = 1; j < d; ++j) strides[j] = strides[j - 1] * params.side();

  std::vector<Edge> edges;
  std::vector<std::int64_t> radix(d);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double p = table.prob(i);
    if (p <= 0.0) continue;

    const auto delta = table.delta(i);
    const std::int64_t pairs = table.pair_count(i);
    // Pair index decodes to x through per-axis radices n+1-|delta_j|; the id
    // of x is base + the radix expansion, the partner sits at a fixed offset.
    std::int64_t base = 0;
    std::int64_t id_delta = 0;
    for (int j = 0; j < d; ++j) {
      radix[j] = params.side() - std::llabs(delta[j]);
      if (delta[j] < 0) base += -delta[j] * strides[j];
      id_delta += delta[j] * strides[j];
    }

    auto emit = [&](std::int64_t slot) {
      NodeId a = base;
      for (int j = 0; j < d; ++j) {
        a += (slot % radix[j]) * strides[j];
        slot /= radix[j];
      }
      NodeId b = a + id_delta;
      if (static_cast<std::int64_t>(edges.size()) >= options.edge_cap) {
        throw ResourceLimitError("sample_graph: edge cap " + std::to_string(options.edge_cap) +
                                 " reached in offset class " + delta_to_string(delta));
      }
      edges.emplace_back(std::min(a, b), std::max(a, b));
    };

    if (p >= options.dense_threshold) {
      for (std::int64_t slot = 0; slot < pairs; ++slot) {
        if (stream.uniform() < p) emit(slot);
      }
      continue;
    }
    const double log_q = std::log1p(-p);
    std::int64_t cursor = -1;
    for (;;) {
      const double skip = std::floor(std::log(stream.uniform_open()) / log_q);
      if (skip >= static_cast<double>(pairs - 1 - cursor)) break;
      cursor += 1 + static_cast<std::int64_t>(skip);
      emit(cursor);
    }
  }
  return GridGraph::from_long_edges(params, trial, std::move(edges));
}

GridGraph sample_graph(const ModelParams& params, std::uint64_t trial,
                       const SampleOptions& options) {
  return sample_graph(OffsetTable(params), trial, options);
}

GridGraph sample_graph_coupled(const ModelParams& params, std::uint64_t trial,
                               const CoupledOptions& options) {
  const std::int64_t nodes = params.node_count();
  if (nodes > options.node_cap) {
    throw ResourceLimitError("sample_graph_coupled: " + std::to_string(nodes) +
                             " nodes exceed the pair-enumeration cap of " +
                             std::to_string(options.node_cap));
  }

  // Edge probability by distance, evaluated once.
  std::vector<double> prob(params.max_distance() + 1, 0.0);
  for (std::int64_t k = 2; k <= params.max_distance(); ++k) {
    prob[k] = edge_probability(k, params);
  }

  std::vector<std::int64_t> coords(nodes * params.d);
  {
    GridPoint pt;
    for (NodeId u = 0; u < nodes; ++u) {
      grid_point_into(u, params, pt);
      for (int j = 0; j < params.d; ++j) coords[u * params.d + j] = pt[j];
    }
  }

  std::vector<Edge> edges;
  for (NodeId a = 0; a < nodes; ++a) {
    for (NodeId b = a + 1; b < nodes; ++b) {
      std::int64_t dist = 0;
      for (int j = 0; j < params.d; ++j) {
        dist += std::llabs(coords[a * params.d + j] - coords[b * params.d + j]);
      }
      if (dist < 2) continue;
      if (rng::pair_uniform(params.seed, trial, static_cast<std::uint64_t>(a),
                            static_cast<std::uint64_t>(b)) < prob[dist]) {
        edges.emplace_back(a, b);
      }
    }
  }
  return GridGraph::from_long_edges(params, trial, std::move(edges));
}

}  // namespace lrp
