#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "lrp/errors.hpp"
#include "lrp/graph_io.hpp"
#include "lrp/sampler.hpp"
#include "support/oracles.hpp"

using namespace lrp;

TEST_CASE("offset enumeration, d=1") {
  const auto offsets = enumerate_offsets(ModelParams(1, 4, 1.0, 1.0, 0));
  REQUIRE(offsets.size() == 3);
  CHECK(offsets[0].delta == std::vector<std::int64_t>{2});
  CHECK(offsets[0].pair_count == 3);
  CHECK(offsets[1].delta == std::vector<std::int64_t>{3});
  CHECK(offsets[1].pair_count == 2);
  CHECK(offsets[2].delta == std::vector<std::int64_t>{4});
  CHECK(offsets[2].pair_count == 1);

  CHECK(enumerate_offsets(ModelParams(1, 1, 1.0, 1.0, 0)).empty());
}

TEST_CASE("offset enumeration, d=2 box product count") {
  const auto offsets = enumerate_offsets(ModelParams(2, 2, 1.0, 1.0, 0));
  const auto it = std::find_if(offsets.begin(), offsets.end(), [](const OffsetClass& c) {
    return c.delta == std::vector<std::int64_t>{1, -1};
  });
  REQUIRE(it != offsets.end());
  CHECK(it->pair_count == 4);
  CHECK(it->distance == 2);
}

TEST_CASE("offset enumeration is canonical, lex-positive and complete") {
  for (const ModelParams& p : {ModelParams(1, 30, 1.3, 0.7, 0), ModelParams(2, 6, 1.3, 0.7, 0),
                               ModelParams(3, 3, 1.3, 0.7, 0)}) {
    const auto offsets = enumerate_offsets(p);
    std::int64_t total = 0;
    std::set<std::vector<std::int64_t>> seen;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      const auto& c = offsets[i];
      // lex-positive: first nonzero coordinate positive
      auto nz = std::find_if(c.delta.begin(), c.delta.end(), [](auto v) { return v != 0; });
      REQUIRE(nz != c.delta.end());
      CHECK(*nz > 0);
      std::int64_t dist = 0;
      for (auto v : c.delta) dist += std::llabs(v);
      CHECK(dist == c.distance);
      CHECK(c.distance >= 2);
      CHECK(c.prob == edge_probability(c.distance, p));
      if (i > 0) CHECK(offsets[i - 1].delta < c.delta);  // strictly ascending
      CHECK(seen.insert(c.delta).second);
      total += c.pair_count;
    }
    const std::int64_t nodes = p.node_count();
    const std::int64_t all_pairs = nodes * (nodes - 1) / 2;
    CHECK(total == all_pairs - p.lattice_edge_count());
  }
}

TEST_CASE("beta = 0 samples exactly the lattice") {
  const GridGraph g = sample_graph(ModelParams(2, 9, 2.0, 0.0, 77), 0);
  CHECK(g.long_edge_count() == 0);
  CHECK(g.edge_count() == g.lattice_edge_count());
  g.audit();
}

TEST_CASE("huge beta forces the complete graph") {
  const GridGraph g = sample_graph(ModelParams(1, 3, 2.0, 1e18, 5), 0);
  CHECK(g.long_edge_count() == 3);  // (0,2) (0,3) (1,3)
  for (NodeId u = 0; u < 4; ++u) {
    for (NodeId v = u + 1; v < 4; ++v) CHECK(g.has_edge(u, v));
  }
}

TEST_CASE("sampled graphs pass the structural audit") {
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    sample_graph(ModelParams(2, 20, 2.0, 1.0, 11), trial).audit();
    sample_graph(ModelParams(1, 200, 1.0, 1.5, 12), trial).audit();
    sample_graph(ModelParams(3, 6, 2.5, 1.0, 13), trial).audit();
  }
}

TEST_CASE("three-dimensional sampling matches per-pair marginals") {
  // d=3 exercises the multi-axis radix decode; check one far pair's marginal
  // through the coupled sampler and the skip sampler's mean edge count.
  const ModelParams p(3, 5, 2.0, 1.0, 31415);
  const OffsetTable table(p);
  double expected = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    expected += static_cast<double>(table.pair_count(i)) * table.prob(i);
  }
  const int trials = 2000;
  double sum = 0.0, var = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double m = static_cast<double>(table.pair_count(i));
    var += m * table.prob(i) * (1.0 - table.prob(i));
  }
  for (int t = 0; t < trials; ++t) sum += sample_graph(table, t).long_edge_count();
  CHECK(std::abs(sum / trials - expected) <= 4.0 * std::sqrt(var / trials));
}

TEST_CASE("sampling is deterministic in (params, trial)") {
  const ModelParams p(1, 300, 1.5, 1.0, 123);
  const std::string a = graph_to_string(sample_graph(p, 7));
  const std::string b = graph_to_string(sample_graph(p, 7));
  CHECK(a == b);
  const std::string c = graph_to_string(sample_graph(p, 8));
  CHECK(a != c);

  // Frozen realization: guards the generator and skip-sampling algorithm
  // against accidental change (serialized bytes are part of the contract).
  const GridGraph tiny = sample_graph(ModelParams(1, 12, 1.0, 1.0, 2024), 0);
  CHECK(graph_to_string(tiny) ==
        "lrp1 d=1 n=12 s=1 beta=1 seed=2024 trial=0 edges=11\n"
        "0 4\n0 6\n1 3\n1 4\n1 5\n2 5\n3 5\n3 11\n7 11\n8 10\n9 11\n");
}

TEST_CASE("edge cap raises naming the class") {
  try {
    sample_graph(ModelParams(1, 50, 1.0, 3.0, 9), 0, SampleOptions{.edge_cap = 4});
    FAIL("expected ResourceLimitError");
  } catch (const ResourceLimitError& e) {
    CHECK(std::string(e.what()).find("offset class") != std::string::npos);
  }
}

TEST_CASE("mean long-edge count matches the analytic expectation") {
  // d=1, n=100, s=1, beta=1: E = sum_{k=2}^{100} (101-k) (1 - e^{-1/k}),
  // Var = sum M p (1-p); the Monte Carlo mean must land within 4 SE.
  const ModelParams p(1, 100, 1.0, 1.0, 314159);
  double expected = 0.0, variance = 0.0;
  for (std::int64_t k = 2; k <= 100; ++k) {
    const double m = static_cast<double>(101 - k);
    const double prob = 1.0 - std::exp(-1.0 / static_cast<double>(k));
    expected += m * prob;
    variance += m * prob * (1.0 - prob);
  }
  const int trials = 10000;
  const OffsetTable table(p);
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) sum += sample_graph(table, t).long_edge_count();
  const double mean = sum / trials;
  const double se = std::sqrt(variance / trials);
  CHECK(std::abs(mean - expected) <= 4.0 * se);
}

TEST_CASE("coupled sampler: beta = 0 and nestedness in beta") {
  CHECK(sample_graph_coupled(ModelParams(1, 60, 2.0, 0.0, 4), 0).long_edge_count() == 0);

  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    std::set<Edge> prev;
    std::int64_t prev_count = -1;
    for (double beta : {0.3, 0.9, 2.0, 5.0}) {
      const GridGraph g = sample_graph_coupled(ModelParams(1, 60, 1.5, beta, 4), trial);
      std::set<Edge> cur(g.long_edges().begin(), g.long_edges().end());
      CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
      CHECK(static_cast<std::int64_t>(cur.size()) >= prev_count);
      prev = std::move(cur);
      prev_count = static_cast<std::int64_t>(prev.size());
    }
  }
}

TEST_CASE("coupled sampler: per-pair marginal frequency") {
  // Pair (0,5) at distance 5, d=1 n=12, s=1, beta=1: presence frequency over
  // 1e5 trials is binomial around p = 1 - e^{-1/5}.
  const ModelParams p(1, 12, 1.0, 1.0, 99);
  const double prob = 1.0 - std::exp(-1.0 / 5.0);
  const int trials = 100000;
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    const GridGraph g = sample_graph_coupled(p, t);
    hits += g.has_edge(0, 5);
  }
  const double freq = static_cast<double>(hits) / trials;
  const double sigma = std::sqrt(prob * (1.0 - prob) / trials);
  CHECK(std::abs(freq - prob) <= 4.0 * sigma);
}

TEST_CASE("coupled sampler node cap") {
  CHECK_THROWS_AS(sample_graph_coupled(ModelParams(1, 20000, 1.0, 1.0, 0), 0),
                  ResourceLimitError);
}

TEST_CASE("skip and coupled samplers agree on the long-edge-count mean") {
  const ModelParams ps(1, 48, 1.2, 0.8, 501);
  const ModelParams pc(1, 48, 1.2, 0.8, 502);
  const int trials = 4000;
  std::vector<double> a, b;
  const OffsetTable table(ps);
  for (int t = 0; t < trials; ++t) {
    a.push_back(static_cast<double>(sample_graph(table, t).long_edge_count()));
    b.push_back(static_cast<double>(sample_graph_coupled(pc, t).long_edge_count()));
  }
  const auto ma = test::moments(a);
  const auto mb = test::moments(b);
  const double z = (ma.mean - mb.mean) /
                   std::sqrt(ma.variance / trials + mb.variance / trials);
  CHECK(std::abs(z) <= 4.0);
}
