#include <doctest.h>

#include <bit>
#include <random>

#include "oracles.hpp"
#include "resmatch/color_subgraph.hpp"
#include "resmatch/matching.hpp"

using namespace resmatch;

namespace {

// Largest edge subset with every degree at most 2; on bipartite hosts every
// such subset is 2-edge-colourable, so this is nu_2 there.
int degree_two_subgraph_oracle(const Graph& g) {
  auto edges = g.edges();
  REQUIRE(edges.size() <= 18);
  int best = 0;
  std::vector<int> degree(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
    std::fill(degree.begin(), degree.end(), 0);
    bool ok = true;
    for (std::size_t i = 0; i < edges.size() && ok; ++i)
      if ((mask >> i) & 1u) ok = ++degree[edges[i].u] <= 2 && ++degree[edges[i].v] <= 2;
    if (ok) best = std::max(best, std::popcount(mask));
  }
  return best;
}

void check_colouring(const Graph& g, const ColorableResult& r) {
  REQUIRE(r.classes.size() == 2);
  std::set<Edge> seen;
  for (const auto& cls : r.classes) {
    Matching m{cls, g.vertex_count()};
    CHECK(validate_matching(g, m).valid);
    for (const Edge& e : cls) CHECK(seen.insert(e).second);
  }
  CHECK(static_cast<int>(seen.size()) == r.size);
}

ColorableResult nu2(const Graph& g) {
  auto b = bipartition(g);
  REQUIRE(b);
  return nu2_bipartite(g, *b);
}

}  // namespace

TEST_CASE("nu2 of named bipartite graphs") {
  CHECK(nu2(oracle::twin_spider()).size == 8);
  CHECK(nu2(oracle::cycle(6)).size == 6);
  CHECK(nu2(oracle::path(5)).size == 4);
  CHECK(nu2(oracle::complete_bipartite(3, 3)).size == 6);
  CHECK(nu2(oracle::complete_bipartite(1, 4)).size == 2);
  CHECK(nu2(build_graph(3, {}).graph).size == 0);
  check_colouring(oracle::twin_spider(), nu2(oracle::twin_spider()));
  check_colouring(oracle::cycle(6), nu2(oracle::cycle(6)));
}

TEST_CASE("nu_k brute force on small named graphs") {
  CHECK(nu_k_bruteforce(oracle::complete(4), 2) == 4);
  CHECK(nu_k_bruteforce(oracle::complete(4), 1) == 2);
  CHECK(nu_k_bruteforce(oracle::complete(4), 3) == 6);
  CHECK(nu_k_bruteforce(oracle::cycle(5), 2) == 4);
  CHECK(nu_k_bruteforce(oracle::cycle(5), 3) == 5);
  CHECK(nu_k_bruteforce(oracle::petersen(), 1) == 5);
  CHECK(nu_k_bruteforce(oracle::path(3), 0) == 0);
  CHECK_THROWS_AS(nu_k_bruteforce(oracle::complete(7), 2), OracleCapExceeded);
  CHECK_THROWS_AS(nu_k_bruteforce(oracle::path(3), -1), std::invalid_argument);
}

TEST_CASE("flow nu2 matches exhaustive subsets on random bipartite graphs") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 300; ++trial) {
    int left = 1 + static_cast<int>(rng() % 6);
    int right = 1 + static_cast<int>(rng() % 6);
    Graph g = oracle::random_bipartite(left, right, 0.4, 16, rng);
    ColorableResult r = nu2(g);
    check_colouring(g, r);
    int expected = degree_two_subgraph_oracle(g);
    CHECK(r.size == expected);
    CHECK(nu_k_bruteforce(g, 2) == expected);
    int matching = oracle::matching_number(g);
    CHECK(matching <= r.size);
    CHECK(r.size <= 2 * matching);
    CHECK(nu_k_bruteforce(g, 1) == matching);
  }
}

TEST_CASE("nu_2 sandwich on random general graphs") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = oracle::random_sparse_graph(7, 14, rng);
    int matching = oracle::matching_number(g);
    int two = nu_k_bruteforce(g, 2);
    CHECK(matching <= two);
    CHECK(two <= 2 * matching);
  }
}

TEST_CASE("nu2_bipartite rejects an invalid bipartition") {
  Graph p3 = oracle::path(3);
  CHECK_THROWS_AS(nu2_bipartite(p3, Bipartition{{1, 2}, {3}}), std::invalid_argument);
}

TEST_CASE("upper bound on L") {
  auto bound = [](const Graph& g) { return upper_bound_L(g, *bipartition(g)); };
  CHECK(bound(oracle::twin_spider()) == 3);
  CHECK(bound(oracle::path(5)) == 2);
  CHECK(bound(oracle::cycle(4)) == 2);

  // L never exceeds the bound: check against the naive spectrum.
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = oracle::random_bipartite(4, 4, 0.4, 14, rng);
    auto s = oracle::naive_spectrum(g);
    CHECK(*s.achieved.rbegin() <= bound(g));
  }
}
