#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "lrp/errors.hpp"
#include "lrp/graph_io.hpp"
#include "lrp/sampler.hpp"

using namespace lrp;

namespace {

GridGraph roundtrip(const GridGraph& g) { return graph_from_string(graph_to_string(g)); }

}  // namespace

TEST_CASE("empty long-edge list round-trips") {
  const GridGraph g = sample_graph(ModelParams(2, 4, 2.0, 0.0, 1), 3);
  const GridGraph back = roundtrip(g);
  CHECK(back.params() == g.params());
  CHECK(back.trial() == g.trial());
  CHECK(back.long_edge_count() == 0);
  CHECK(back.edge_count() == g.edge_count());
}

TEST_CASE("random graphs rewrite byte-identically") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> n_dist(2, 18);
  std::uniform_real_distribution<double> s_dist(0.4, 3.0);
  std::uniform_real_distribution<double> b_dist(0.0, 2.5);
  for (int it = 0; it < 1000; ++it) {
    const int d = 1 + static_cast<int>(rng() % 2);
    const ModelParams p(d, n_dist(rng), s_dist(rng), b_dist(rng), rng());
    const GridGraph g = sample_graph(p, it);
    const std::string text = graph_to_string(g);
    const GridGraph back = graph_from_string(text);
    CHECK(graph_to_string(back) == text);
    CHECK(back.params() == p);
  }
}

TEST_CASE("parse errors carry line numbers") {
  auto expect_error = [](const std::string& text, int line, const char* needle) {
    try {
      graph_from_string(text);
      FAIL_CHECK("expected ParseError for: " << needle << "\n" << text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  expect_error("", 0, "empty");
  expect_error("bogus d=1 n=5 s=1 beta=0 seed=0 trial=0 edges=0\n", 1, "magic");
  expect_error("lrp1 d=1 n=5 s=1 beta=0 seed=0 edges=0\n", 1, "trial");
  expect_error("lrp1 d=1 n=5 s=x beta=0 seed=0 trial=0 edges=0\n", 1, "unparsable");
  expect_error("lrp1 d=0 n=5 s=1 beta=0 seed=0 trial=0 edges=0\n", 1, "d must be");
  expect_error("lrp1 d=1 n=5 s=1 beta=1 seed=0 trial=0 edges=1\n5 5\n", 2, "self-loop");
  expect_error("lrp1 d=1 n=5 s=1 beta=1 seed=0 trial=0 edges=1\n3 1\n", 2, "order");
  expect_error("lrp1 d=1 n=5 s=1 beta=1 seed=0 trial=0 edges=1\n0 9\n", 2, "out of range");
  expect_error("lrp1 d=1 n=5 s=1 beta=1 seed=0 trial=0 edges=1\n0 1\n", 2, "lattice");
  expect_error("lrp1 d=1 n=5 s=1 beta=1 seed=0 trial=0 edges=2\n0 2\n", 3, "end of input");
  expect_error("lrp1 d=1 n=5 s=1 beta=1 seed=0 trial=0 edges=2\n0 3\n0 2\n", 3, "unsorted");
  expect_error("lrp1 d=1 n=5 s=1 beta=1 seed=0 trial=0 edges=2\n0 2\n0 2\n", 3, "unsorted");
  expect_error("lrp1 d=1 n=5 s=1 beta=1 seed=0 trial=0 edges=1\n0 2\njunk\n", 3, "trailing");
  expect_error("lrp1 d=1 n=5 s=1 beta=1 seed=0 trial=0 edges=1\n0 2 9\n", 2, "trailing");
}

TEST_CASE("from_long_edges validation") {
  const ModelParams p(1, 9, 1.0, 1.0, 0);
  CHECK_THROWS_AS(GridGraph::from_long_edges(p, 0, {{3, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(GridGraph::from_long_edges(p, 0, {{3, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(GridGraph::from_long_edges(p, 0, {{0, 12}}), std::invalid_argument);
  CHECK_THROWS_AS(GridGraph::from_long_edges(p, 0, {{0, 2}, {2, 0}}), std::invalid_argument);
  // order-insensitive input, canonical output
  const GridGraph g = GridGraph::from_long_edges(p, 0, {{7, 2}, {0, 5}});
  REQUIRE(g.long_edge_count() == 2);
  CHECK(g.long_edges()[0] == Edge{0, 5});
  CHECK(g.long_edges()[1] == Edge{2, 7});
  g.audit();
}

TEST_CASE("shortest round-trip real formatting in headers") {
  const GridGraph g = sample_graph(ModelParams(1, 6, 1.25, 0.1, 2), 0);
  const std::string text = graph_to_string(g);
  CHECK(text.find("s=1.25 beta=0.1 ") != std::string::npos);
}
