#pragma once

#include <cstdint>
#include <vector>

namespace lrp {

/// Linear node index. Bijective with grid coordinates through the mixed-radix
/// rule idx = sum_j coords[j] * (n+1)^j, coordinate 0 least significant.
using NodeId = std::int64_t;

/// A point of the grid {0..n}^d, stored as its d coordinates.
using GridPoint = std::vector<std::int64_t>;

/// Parameters of one graph distribution on the grid {0..n}^d. Two nodes at L1
/// distance 1 are always adjacent; nodes at distance k >= 2 are adjacent
/// independently with probability 1 - exp(-beta / k^s). `seed` is the master
/// seed every realization derives its random stream from.
struct ModelParams {
  int d = 1;
  std::int64_t n = 1;
  double s = 1.0;
  double beta = 0.0;
  std::uint64_t seed = 0;

  ModelParams() = default;
  /// Validates ranges and rejects grids whose node count or maximal hop count
  /// would overflow the index arithmetic used downstream.
  ModelParams(int d, std::int64_t n, double s, double beta, std::uint64_t seed);

  std::int64_t side() const { return n + 1; }
  std::int64_t node_count() const;
  /// Largest possible L1 distance in the box, d*n.
  std::int64_t max_distance() const { return static_cast<std::int64_t>(d) * n; }
  /// Count of unordered nearest-neighbor pairs, d * n * (n+1)^(d-1).
  std::int64_t lattice_edge_count() const;

  bool operator==(const ModelParams&) const = default;
};

/// Sum of |a_j - b_j|. Throws on dimension mismatch.
std::int64_t l1_distance(const GridPoint& a, const GridPoint& b);

/// Sum of the coordinates; equals l1_distance(p, origin) for points of the box.
std::int64_t origin_norm(const GridPoint& p);

/// The edge law: 1 for k = 1, 1 - exp(-beta / k^s) for k >= 2. Evaluated with
/// expm1 so probabilities ~beta/k^s stay accurate down to ~1e-300. Throws for
/// k < 1 (the model has no self-loops).
double edge_probability(std::int64_t k, const ModelParams& params);

/// Mixed-radix encode/decode between coordinates and linear ids.
NodeId node_id(const GridPoint& p, const ModelParams& params);
GridPoint grid_point(NodeId id, const ModelParams& params);

/// Allocation-free decode for hot loops; `out` is resized to d.
void grid_point_into(NodeId id, const ModelParams& params, GridPoint& out);

/// origin_norm of a node given directly by id (no vector materialized).
std::int64_t node_norm(NodeId id, const ModelParams& params);

}  // namespace lrp
