#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "resmatch/graph.hpp"

namespace resmatch {

/// A set of pairwise disjoint edges, kept in canonical order.
struct Matching {
  std::vector<Edge> edges;
  /// vertex_count of the graph the matching was computed on.
  int host_size = 0;

  std::size_t size() const { return edges.size(); }
  bool operator==(const Matching&) const = default;
};

/// Sorts and deduplicates the edge list in place.
void canonicalize(Matching& m);

/// Seed 0 scans vertices in index order; other seeds permute scan order.
inline constexpr std::uint64_t kDefaultSeed = 0;

/// Maximum matching of a general graph (Edmonds' blossom algorithm). The seed
/// permutes vertex and neighbour order, so different seeds may return
/// different maximum matchings. Deterministic for fixed (g, seed).
Matching max_matching(const Graph& g, std::uint64_t seed = kDefaultSeed);

/// Hopcroft-Karp on a bipartite graph. Throws std::invalid_argument when b is
/// not a valid bipartition of g.
Matching max_matching_bipartite(const Graph& g, const Bipartition& b);

/// Matching number of g.
int nu(const Graph& g);

struct MatchingFlags {
  bool valid = false;
  bool maximal = false;
  bool maximum = false;
  bool perfect = false;
};

MatchingFlags validate_matching(const Graph& g, const Matching& f);

/// Raised when an exhaustive oracle is asked to handle more edges than its cap.
class OracleCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kBruteforceEdgeCap = 24;

/// Exhaustive maximum matching size. Test oracle; refuses graphs with more
/// than `edge_cap` edges.
int nu_bruteforce(const Graph& g, std::size_t edge_cap = kBruteforceEdgeCap);

/// "m u v" lines in canonical order.
std::string emit_matching(const Matching& m);

}  // namespace resmatch
