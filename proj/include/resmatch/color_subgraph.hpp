#pragma once

#include <cstddef>
#include <vector>

#include "resmatch/graph.hpp"

namespace resmatch {

/// A k-edge-colourable subgraph with an explicit colouring; classes[c] is a
/// matching for each colour c.
struct ColorableResult {
  int k = 0;
  int size = 0;
  std::vector<std::vector<Edge>> classes;
};

/// nu_2 of a bipartite graph via max flow: source->side0 and side1->sink arcs
/// carry capacity 2, graph edges capacity 1. The resulting paths and even
/// cycles are split into two matchings by alternating colours from the lowest
/// endpoint. Throws std::invalid_argument for an invalid bipartition.
ColorableResult nu2_bipartite(const Graph& g, const Bipartition& b);

inline constexpr std::size_t kColorBruteforceEdgeCap = 20;

/// Exact nu_k by exhaustive colour assignment. Test oracle; throws
/// OracleCapExceeded above `edge_cap` edges.
int nu_k_bruteforce(const Graph& g, int k, std::size_t edge_cap = kColorBruteforceEdgeCap);

/// nu_2(g) - nu(g), an upper bound on L(g) for bipartite g.
int upper_bound_L(const Graph& g, const Bipartition& b);

}  // namespace resmatch
