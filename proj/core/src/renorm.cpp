#include "lrp/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lrp {

namespace {

// Digit radices of the cube hierarchy. With L_0 = n+1, a level-r digit is at
// most (L_{r-1} - 1) / L_r, so digits and the flattened keys they compose are
// bounded independently of where truncation shortens the final block.
struct CubeScheme {
  int d;
  int levels;
  std::int64_t n;
  std::vector<std::int64_t> sides;        // L_1..L_m
  std::vector<std::uint64_t> radix;       // R_1..R_m
  std::vector<std::uint64_t> axis_total;  // P_r = R_1 * ... * R_r

  CubeScheme(const ModelParams& params, const RenormPlan& plan)
      : d(params.d), levels(plan.levels), n(params.n), sides(plan.side_lengths) {
    std::int64_t prev = params.side();
    unsigned __int128 total = 1;
    for (int r = 0; r < levels; ++r) {
      const std::uint64_t rad = static_cast<std::uint64_t>((prev - 1) / sides[r]) + 1;
      radix.push_back(rad);
      total *= rad;
      if (total > (static_cast<unsigned __int128>(1) << 62)) {
        throw std::invalid_argument("renorm: cube key radix overflows");
      }
      axis_total.push_back(static_cast<std::uint64_t>(total));
      prev = sides[r];
    }
    unsigned __int128 keyspace = 1;
    for (int j = 0; j < d; ++j) {
      keyspace *= axis_total.back();
      if (keyspace > (static_cast<unsigned __int128>(1) << 62)) {
        throw std::invalid_argument("renorm: cube key space overflows");
      }
    }
  }

  /// Flattened id of the level-`level` cube containing the point.
  std::uint64_t cube_key(const GridPoint& p, int level) const {
    std::uint64_t key = 0;
    for (int j = d - 1; j >= 0; --j) {
      std::uint64_t axis_key = 0;
      std::int64_t rem = p[j];
      for (int t = 0; t < level; ++t) {
        axis_key = axis_key * radix[t] + static_cast<std::uint64_t>(rem / sides[t]);
        rem %= sides[t];
      }
      key = key * axis_total[level - 1] + axis_key;
    }
    return key;
  }

  /// First level (1-based) at which the two points fall into different cubes;
  /// levels+1 when they share a cube all the way down.
  int divergence_level(const GridPoint& a, const GridPoint& b) const {
    for (int r = 1; r <= levels; ++r) {
      for (int j = 0; j < d; ++j) {
        std::int64_t ra = a[j], rb = b[j];
        for (int t = 0; t < r; ++t) {
          const std::int64_t da = ra / sides[t], db = rb / sides[t];
          if (t == r - 1) {
            if (da != db) return r;
          }
          ra %= sides[t];
          rb %= sides[t];
        }
      }
    }
    return levels + 1;
  }

  /// The level-`level` child of `parent` containing the point.
  Box child_box(const Box& parent, int level, const GridPoint& p) const {
    const std::int64_t side = sides[level - 1];
    Box child;
    child.lo.resize(d);
    child.hi.resize(d);
    for (int j = 0; j < d; ++j) {
      const std::int64_t idx = (p[j] - parent.lo[j]) / side;
      child.lo[j] = parent.lo[j] + idx * side;
      child.hi[j] = std::min(child.lo[j] + side - 1, parent.hi[j]);
    }
    return child;
  }
};

std::pair<std::uint64_t, std::uint64_t> pair_key(std::uint64_t a, std::uint64_t b) {
  return {std::min(a, b), std::max(a, b)};
}

void validate_box(const Box& box, const ModelParams& params, const char* op) {
  if (static_cast<int>(box.lo.size()) != params.d ||
      static_cast<int>(box.hi.size()) != params.d) {
    throw std::invalid_argument(std::string(op) + ": box dimension mismatch");
  }
  for (int j = 0; j < params.d; ++j) {
    if (box.lo[j] > box.hi[j]) throw std::invalid_argument(std::string(op) + ": empty box");
    if (box.lo[j] < 0 || box.hi[j] > params.n) {
      throw std::invalid_argument(std::string(op) + ": box out of the grid");
    }
  }
}

bool in_box(const GridPoint& p, const Box& box) {
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] < box.lo[j] || p[j] > box.hi[j]) return false;
  }
  return true;
}

std::int64_t box_volume(const Box& box) {
  std::int64_t v = 1;
  for (std::size_t j = 0; j < box.lo.size(); ++j) v *= box.hi[j] - box.lo[j] + 1;
  return v;
}

template <typename Fn>
void for_each_box_node(const Box& box, const ModelParams& params, Fn&& fn) {
  GridPoint p = box.lo;
  for (;;) {
    fn(node_id(p, params), p);
    int j = 0;
    while (j < params.d && ++p[j] > box.hi[j]) {
      p[j] = box.lo[j];
      ++j;
    }
    if (j == params.d) break;
  }
}

}  // namespace

RenormPlan make_renorm_plan(const ModelParams& params, double alpha, int levels) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("make_renorm_plan: alpha must be in (0,1)");
  }
  if (!(2.0 * params.d * alpha > params.s)) {
    throw std::invalid_argument("make_renorm_plan: requires 2*d*alpha > s");
  }
  if (levels < 1 || levels > 40) {
    throw std::invalid_argument("make_renorm_plan: levels must be in [1, 40]");
  }

  RenormPlan plan;
  plan.alpha = alpha;
  plan.levels = levels;
  double exponent = 1.0;
  std::int64_t prev = params.side();
  for (int r = 1; r <= levels; ++r) {
    exponent *= alpha;
    const auto side = static_cast<std::int64_t>(
        std::ceil(std::pow(static_cast<double>(params.n), exponent)));
    if (side >= prev) {
      throw std::invalid_argument(
          "make_renorm_plan: side lengths not strictly decreasing at level " +
          std::to_string(r) + " (plan exhausts side length 1 for this n)");
    }
    plan.side_lengths.push_back(side);
    prev = side;
  }
  return plan;
}

std::optional<Edge> subcube_connected(const GridGraph& g, const Box& a, const Box& b) {
  validate_box(a, g.params(), "subcube_connected");
  validate_box(b, g.params(), "subcube_connected");
  const Box& scan = box_volume(a) <= box_volume(b) ? a : b;
  const Box& other = box_volume(a) <= box_volume(b) ? b : a;

  std::optional<Edge> found;
  GridPoint q;
  for_each_box_node(scan, g.params(), [&](NodeId u, const GridPoint&) {
    if (found) return;
    for (NodeId v : g.neighbors(u)) {
      grid_point_into(v, g.params(), q);
      if (in_box(q, other)) {
        found = Edge{u, v};
        return;
      }
    }
  });
  return found;
}

RenormCertificate renorm_certificate(const GridGraph& g, const RenormPlan& plan) {
  const ModelParams& params = g.params();
  if (static_cast<int>(plan.side_lengths.size()) != plan.levels || plan.levels < 1) {
    throw std::invalid_argument("renorm_certificate: malformed plan");
  }
  CubeScheme scheme(params, plan);

  RenormCertificate cert;
  cert.params = params;
  cert.plan = plan;
  cert.witnesses.assign(plan.levels, {});
  cert.cubes_per_level.assign(plan.levels, 0);
  cert.pairs_per_level.assign(plan.levels, 0);

  // Tag each long edge at the level where its endpoints first split apart.
  // Within-parent sibling connectivity at level r is determined exactly by
  // the edges tagged at r: shallower edges cross different parents, deeper
  // ones stay inside one level-r cube.
  {
    GridPoint a, b;
    for (const auto& e : g.long_edges()) {
      grid_point_into(e.first, params, a);
      grid_point_into(e.second, params, b);
      const int r = scheme.divergence_level(a, b);
      if (r > plan.levels) continue;
      cert.witnesses[r - 1].emplace(pair_key(scheme.cube_key(a, r), scheme.cube_key(b, r)), e);
    }
  }

  // Level-by-level completeness audit. A sibling pair is joined either by a
  // lattice edge (boxes adjacent along one axis) or by a tagged long edge.
  struct Cube {
    Box box;
    std::vector<std::uint64_t> axis_keys;
    std::vector<std::int64_t> index;  // child index per axis within its parent
  };
  std::vector<Cube> parents{{Box{GridPoint(params.d, 0), GridPoint(params.d, params.n)},
                             std::vector<std::uint64_t>(params.d, 0),
                             std::vector<std::int64_t>(params.d, 0)}};

  for (int r = 1; r <= plan.levels; ++r) {
    const std::int64_t side = plan.side_lengths[r - 1];
    std::vector<Cube> next;
    for (const Cube& parent : parents) {
      std::vector<Cube> children;
      Cube child;
      child.index.assign(params.d, 0);
      for (;;) {
        child.box.lo.resize(params.d);
        child.box.hi.resize(params.d);
        child.axis_keys.resize(params.d);
        for (int j = 0; j < params.d; ++j) {
          child.box.lo[j] = parent.box.lo[j] + child.index[j] * side;
          child.box.hi[j] = std::min(child.box.lo[j] + side - 1, parent.box.hi[j]);
          child.axis_keys[j] =
              parent.axis_keys[j] * scheme.radix[r - 1] + static_cast<std::uint64_t>(child.index[j]);
        }
        children.push_back(child);
        int j = 0;
        while (j < params.d &&
               parent.box.lo[j] + (child.index[j] + 1) * side > parent.box.hi[j]) {
          child.index[j] = 0;
          ++j;
        }
        if (j == params.d) break;
        ++child.index[j];
      }

      cert.cubes_per_level[r - 1] += static_cast<std::int64_t>(children.size());
      for (std::size_t ia = 0; ia < children.size(); ++ia) {
        for (std::size_t ib = ia + 1; ib < children.size(); ++ib) {
          ++cert.pairs_per_level[r - 1];
          std::int64_t index_gap = 0;
          for (int j = 0; j < params.d; ++j) {
            index_gap += std::llabs(children[ia].index[j] - children[ib].index[j]);
          }
          if (index_gap == 1) continue;  // joined by a lattice edge across the shared face

          std::uint64_t ka = 0, kb = 0;
          for (int j = params.d - 1; j >= 0; --j) {
            ka = ka * scheme.axis_total[r - 1] + children[ia].axis_keys[j];
            kb = kb * scheme.axis_total[r - 1] + children[ib].axis_keys[j];
          }
          if (!cert.witnesses[r - 1].count(pair_key(ka, kb))) {
            cert.valid = false;
            cert.failure = LevelFailure{r, children[ia].box, children[ib].box};
            return cert;
          }
        }
      }
      for (Cube& c : children) next.push_back(std::move(c));
    }
    parents = std::move(next);
  }

  cert.valid = true;
  const __int128 bound = (static_cast<__int128>(1) << (plan.levels + 1)) * params.d *
                         plan.side_lengths[plan.levels - 1];
  if (bound > (static_cast<__int128>(1) << 62)) {
    throw std::overflow_error("renorm_certificate: implied bound overflows");
  }
  cert.implied_bound = static_cast<std::int64_t>(bound);
  return cert;
}

namespace {

void lattice_walk(const GridPoint& from, const GridPoint& to, const ModelParams& params,
                  std::vector<NodeId>& out) {
  GridPoint cur = from;
  out.push_back(node_id(cur, params));
  for (int j = 0; j < params.d; ++j) {
    while (cur[j] != to[j]) {
      cur[j] += cur[j] < to[j] ? 1 : -1;
      out.push_back(node_id(cur, params));
    }
  }
}

}  // namespace

std::vector<NodeId> renorm_path(const GridGraph& g, const RenormCertificate& cert, NodeId x,
                                NodeId y) {
  if (!cert.valid) throw std::invalid_argument("renorm_path: certificate is not valid");
  if (g.params() != cert.params) {
    throw std::invalid_argument("renorm_path: certificate built for different parameters");
  }
  const ModelParams& params = g.params();
  CubeScheme scheme(params, cert.plan);

  std::vector<NodeId> path;
  GridPoint q;
  auto build = [&](auto&& self, const GridPoint& a, const GridPoint& b, int r,
                   const Box& box) -> void {
    if (r > cert.plan.levels) {
      lattice_walk(a, b, params, path);
      return;
    }
    const Box box_a = scheme.child_box(box, r, a);
    const Box box_b = scheme.child_box(box, r, b);
    if (box_a.lo == box_b.lo) {
      self(self, a, b, r + 1, box_a);
      return;
    }
    Edge w;
    const auto it =
        cert.witnesses[r - 1].find(pair_key(scheme.cube_key(a, r), scheme.cube_key(b, r)));
    if (it != cert.witnesses[r - 1].end()) {
      w = it->second;
    } else {
      const auto lattice = subcube_connected(g, box_a, box_b);
      if (!lattice) throw std::logic_error("renorm_path: certificate misses a cube pair");
      w = *lattice;
    }
    GridPoint wu = grid_point(w.first, params);
    GridPoint wv = grid_point(w.second, params);
    if (!in_box(wu, box_a)) std::swap(wu, wv);

    self(self, a, wu, r + 1, box_a);
    self(self, wv, b, r + 1, box_b);
  };

  const GridPoint px = grid_point(x, params);
  const GridPoint py = grid_point(y, params);
  Box whole{GridPoint(params.d, 0), GridPoint(params.d, params.n)};
  build(build, px, py, 1, whole);
  return path;
}

}  // namespace lrp
