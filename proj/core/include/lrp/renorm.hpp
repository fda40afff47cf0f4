#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lrp/graph.hpp"
#include "lrp/rng.hpp"

namespace lrp {

/// Hierarchical subcube plan: level r tiles each level-(r-1) cube with blocks
/// of side ceil(n^(alpha^r)), blocks starting at multiples of the side and
/// the final block per axis truncated. Requires 2*d*alpha > s.
struct RenormPlan {
  double alpha = 0.0;
  int levels = 0;
  std::vector<std::int64_t> side_lengths;  // per level, strictly decreasing
};

RenormPlan make_renorm_plan(const ModelParams& params, double alpha, int levels);

/// Axis-aligned box of grid points, bounds inclusive.
struct Box {
  GridPoint lo, hi;
};

/// First edge with one endpoint in each box, or nullopt. Scans the smaller
/// box's adjacency. Throws on empty or out-of-range boxes.
std::optional<Edge> subcube_connected(const GridGraph& g, const Box& a, const Box& b);

struct LevelFailure {
  int level = 0;
  Box cube_a, cube_b;
};

struct CubePairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const {
    return static_cast<std::size_t>(rng::mix(p.first, p.second));
  }
};
using WitnessMap =
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, Edge, CubePairHash>;

/// Outcome of the hierarchical check. Valid means: every pair of level-1
/// cubes is joined by an edge, and within every level-(r-1) cube every pair
/// of its level-r subcubes is joined, r = 2..levels. When valid, every two
/// nodes are connected by a path of length at most
/// 2^(levels+1) * d * side_lengths[levels-1], and renorm_path constructs one.
struct RenormCertificate {
  ModelParams params;
  RenormPlan plan;
  bool valid = false;
  std::optional<LevelFailure> failure;
  std::int64_t implied_bound = 0;

  /// One witness edge per long-edge-joined sibling cube pair, per level.
  /// Axis-adjacent siblings are joined through lattice edges and not listed.
  std::vector<WitnessMap> witnesses;
  std::vector<std::int64_t> cubes_per_level;
  std::vector<std::int64_t> pairs_per_level;
};

/// Single pass over the long edges tagging sibling cube pairs at each level,
/// then a completeness audit. The first failing pair (deterministic order)
/// is reported.
RenormCertificate renorm_certificate(const GridGraph& g, const RenormPlan& plan);

/// Explicit x-to-y path from a valid certificate: recurse into the shared
/// cube, or cross the witness edge between the two cubes and recurse on both
/// sides; inside level-`levels` cubes walk the lattice. Every consecutive
/// pair is an edge of g and the length never exceeds implied_bound.
std::vector<NodeId> renorm_path(const GridGraph& g, const RenormCertificate& cert, NodeId x,
                                NodeId y);

}  // namespace lrp
