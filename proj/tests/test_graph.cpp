#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "mkcs/graph.hpp"
#include "mkcs/rng.hpp"
#include "oracles.hpp"

using namespace mkcs;

TEST_CASE("er_generate boundary probabilities") {
  CHECK(er_generate(5, 0.0, 1).edge_count() == 0);
  CHECK(er_generate(5, 1.0, 1).edge_count() == 10);
  CHECK(er_generate(1, 0.7, 9).edge_count() == 0);
}

TEST_CASE("er_generate is a pure function of (n, p, seed)") {
  const Graph a = er_generate(5, 0.5, 7);
  const Graph b = er_generate(5, 0.5, 7);
  CHECK(a.edges == b.edges);
  // Different seeds should explore different graphs at least once.
  bool any_different = false;
  for (std::uint64_t seed = 0; seed < 16 && !any_different; ++seed)
    any_different = er_generate(5, 0.5, seed).edges != a.edges;
  CHECK(any_different);
}

TEST_CASE("er_generate mean edge count tracks p") {
  const int n = 20;
  const double p = 0.3;
  const int trials = 1000;
  const double candidates = n * (n - 1) / 2.0;
  double total = 0.0;
  for (int seed = 0; seed < trials; ++seed)
    total += er_generate(n, p, std::uint64_t(seed)).edge_count();
  const double mean = total / trials;
  const double se = std::sqrt(candidates * p * (1 - p) / trials);
  CHECK(std::fabs(mean - p * candidates) <= 3.0 * se);
}

TEST_CASE("counterexample families have the closed-form sizes") {
  CHECK(clique_counterexample(1).edge_count() == 1);
  CHECK(clique_counterexample(2).edge_count() == 3);
  CHECK(clique_counterexample(4).edge_count() == 10);
  CHECK(pendant_counterexample(1).edges ==
        std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(pendant_counterexample(2).n == 4);
  CHECK(pendant_counterexample(2).edge_count() == 4);
  for (int k = 1; k <= 10; ++k) {
    CHECK(clique_counterexample(k).n == k + 1);
    CHECK(clique_counterexample(k).edge_count() == (k + 1) * k / 2);
    CHECK(pendant_counterexample(k).n == k + 2);
    CHECK(pendant_counterexample(k).edge_count() == (k + 1) * k / 2 + 1);
  }
}

TEST_CASE("dimacs parsing") {
  const Graph g = read_graph_string("c sample\np edge 3 2\ne 1 2\ne 2 3\n");
  CHECK(g.n == 3);
  CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("dimacs rejects each malformed input distinctly") {
  auto kind_of = [](const std::string& text) {
    try {
      read_graph_string(text);
    } catch (const GraphParseError& e) {
      return e.kind();
    }
    throw std::logic_error("expected a parse error");
  };
  CHECK(kind_of("p edge 3 1\ne 1 1\n") == GraphParseErrorKind::self_loop);
  CHECK(kind_of("p edge 3 1\ne 1 4\n") ==
        GraphParseErrorKind::vertex_out_of_range);
  CHECK(kind_of("p edge 3 2\ne 1 2\ne 2 1\n") ==
        GraphParseErrorKind::duplicate_edge);
  CHECK(kind_of("p edge 3 1\ne 1\n") == GraphParseErrorKind::malformed_line);
  CHECK(kind_of("q edge 3 1\n") == GraphParseErrorKind::malformed_line);
  CHECK(kind_of("e 1 2\n") == GraphParseErrorKind::malformed_line);
}

TEST_CASE("dimacs round trip") {
  const Graph k3 = clique_counterexample(2);
  CHECK(read_graph_string(write_graph_string(k3)).edges == k3.edges);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Graph g = er_generate(7, 0.4, seed);
    const Graph back = read_graph_string(write_graph_string(g));
    CHECK(back.n == g.n);
    CHECK(back.edges == g.edges);
  }
  CHECK(write_graph_string(k3) == "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
}

TEST_CASE("make_graph validates invariants") {
  CHECK_THROWS(make_graph(3, {{0, 0}}));
  CHECK_THROWS(make_graph(3, {{0, 3}}));
  CHECK_THROWS(make_graph(3, {{0, 1}, {1, 0}}));
  const Graph g = make_graph(3, {{2, 0}, {1, 2}});
  CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 2}, {1, 2}});
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(0, 1));
}

TEST_CASE("nonisomorphic graph counts match the catalog") {
  CHECK(mkcs::testing::nonisomorphic_graphs(1).size() == 1);
  CHECK(mkcs::testing::nonisomorphic_graphs(2).size() == 2);
  CHECK(mkcs::testing::nonisomorphic_graphs(3).size() == 4);
  CHECK(mkcs::testing::nonisomorphic_graphs(4).size() == 11);
  CHECK(mkcs::testing::nonisomorphic_graphs(5).size() == 34);
  CHECK(mkcs::testing::nonisomorphic_graphs(6).size() == 156);
}
