#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "resmatch/matching.hpp"

using namespace resmatch;

namespace {

Matching of(int host, std::vector<Edge> edges) {
  Matching m{std::move(edges), host};
  canonicalize(m);
  return m;
}

void check_is_maximum(const Graph& g, const Matching& m, int expected) {
  auto flags = validate_matching(g, m);
  CHECK(flags.valid);
  CHECK(flags.maximum);
  CHECK(static_cast<int>(m.size()) == expected);
  CHECK(m.host_size == g.vertex_count());
  CHECK(std::is_sorted(m.edges.begin(), m.edges.end()));
}

}  // namespace

TEST_CASE("matching numbers of named graphs") {
  CHECK(nu(oracle::path(5)) == 2);
  CHECK(nu(oracle::cycle(5)) == 2);
  CHECK(nu(oracle::complete_bipartite(3, 3)) == 3);
  CHECK(nu(oracle::petersen()) == 5);
  CHECK(nu(oracle::complete(4)) == 2);
  CHECK(nu(oracle::twin_spider()) == 5);
  CHECK(nu(build_graph(0, {}).graph) == 0);
  CHECK(nu(build_graph(1, {}).graph) == 0);
  CHECK(nu(build_graph(6, {}).graph) == 0);
}

TEST_CASE("max_matching returns a valid maximum matching") {
  for (const Graph& g : {oracle::path(5), oracle::cycle(7), oracle::petersen(), oracle::complete(7),
                         oracle::twin_spider(), oracle::complete_bipartite(2, 5)}) {
    check_is_maximum(g, max_matching(g), oracle::matching_number(g));
  }
}

TEST_CASE("blossom agrees with exhaustive enumeration on every graph up to 6 vertices") {
  for (int n = 1; n <= 6; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      Graph g = oracle::from_mask(n, mask);
      int expected = oracle::matching_number(g);
      Matching m = max_matching(g);
      auto flags = validate_matching(g, m);
      REQUIRE(flags.valid);
      REQUIRE(static_cast<int>(m.size()) == expected);
    }
  }
}

TEST_CASE("blossom agrees with exhaustive enumeration on random graphs, all seeds") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + static_cast<int>(rng() % 13);
    Graph g = oracle::random_sparse_graph(n, 20, rng);
    int expected = oracle::matching_number(g);
    for (std::uint64_t seed : {0ull, 1ull, 7ull, 123456789ull}) {
      Matching m = max_matching(g, seed);
      REQUIRE(validate_matching(g, m).valid);
      REQUIRE(static_cast<int>(m.size()) == expected);
    }
    CHECK(nu_bruteforce(g) == expected);
  }
}

TEST_CASE("max_matching is deterministic per seed and seeds can differ") {
  Graph c6 = oracle::cycle(6);
  CHECK(max_matching(c6, 5) == max_matching(c6, 5));
  CHECK(max_matching(c6) == max_matching(c6, kDefaultSeed));
  std::set<std::vector<Edge>> seen;
  for (std::uint64_t seed = 0; seed < 64; ++seed) seen.insert(max_matching(c6, seed).edges);
  // C6 has two perfect matchings; scan-order permutations should find both.
  CHECK(seen.size() == 2);
}

TEST_CASE("Hopcroft-Karp agrees with blossom on bipartite graphs") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 300; ++trial) {
    int left = 1 + static_cast<int>(rng() % 8);
    int right = 1 + static_cast<int>(rng() % 8);
    Graph g = oracle::random_bipartite(left, right, 0.35, 64, rng);
    auto b = bipartition(g);
    REQUIRE(b);
    Matching hk = max_matching_bipartite(g, *b);
    REQUIRE(validate_matching(g, hk).valid);
    CHECK(hk.size() == max_matching(g).size());
  }
  Graph small = oracle::complete_bipartite(2, 3);
  CHECK(static_cast<int>(max_matching_bipartite(small, *bipartition(small)).size()) == oracle::matching_number(small));
}

TEST_CASE("Hopcroft-Karp rejects an invalid bipartition") {
  Graph p3 = oracle::path(3);
  Bipartition wrong{{1, 2}, {3}};
  CHECK_THROWS_AS(max_matching_bipartite(p3, wrong), std::invalid_argument);
}

TEST_CASE("validate_matching flags") {
  Graph p5 = oracle::path(5);
  auto two_three = validate_matching(p5, of(5, {{2, 3}}));
  CHECK(two_three.valid);
  CHECK_FALSE(two_three.maximal);  // 4-5 is still free
  CHECK_FALSE(two_three.maximum);
  CHECK_FALSE(two_three.perfect);

  auto maximal_only = validate_matching(p5, of(5, {{2, 3}, {4, 5}}));
  CHECK(maximal_only.valid);
  CHECK(maximal_only.maximal);
  CHECK(maximal_only.maximum);

  Graph p4 = oracle::path(4);
  auto middle = validate_matching(p4, of(4, {{2, 3}}));
  CHECK(middle.maximal);
  CHECK_FALSE(middle.maximum);
  auto perfect = validate_matching(p4, of(4, {{1, 2}, {3, 4}}));
  CHECK(perfect.maximum);
  CHECK(perfect.perfect);

  CHECK_FALSE(validate_matching(p5, of(5, {{1, 2}, {2, 3}})).valid);
  CHECK_FALSE(validate_matching(p5, of(5, {{1, 3}})).valid);
  CHECK(validate_matching(p5, of(5, {})).valid);
  CHECK_FALSE(validate_matching(p5, of(5, {})).maximal);
}

TEST_CASE("nu_bruteforce refuses graphs above its cap") {
  CHECK_THROWS_AS(nu_bruteforce(oracle::complete(8)), OracleCapExceeded);
  CHECK(nu_bruteforce(oracle::complete(8), 28) == 4);
  CHECK(nu_bruteforce(oracle::path(5)) == 2);
}

TEST_CASE("emit_matching") {
  CHECK(emit_matching(of(5, {{4, 5}, {2, 1}})) == "m 1 2\nm 4 5\n");
  CHECK(emit_matching(of(3, {})).empty());
}
