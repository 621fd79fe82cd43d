#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace resmatch {

/// Undirected edge stored with u < v. Vertices are 1-indexed.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool touches(int w) const { return u == w || v == w; }
  auto operator<=>(const Edge&) const = default;
};

/// Integer lattice point attached to a vertex as metadata.
struct Point {
  long long x = 0;
  long long y = 0;
  auto operator<=>(const Point&) const = default;
};

/// Raised on structurally invalid graph input (range, self-loop, coords).
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the text parsers; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Immutable simple undirected graph on vertices 1..vertex_count.
class Graph {
 public:
  Graph() = default;

  int vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Edges in canonical (lexicographic) order.
  std::span<const Edge> edges() const { return edges_; }
  /// Sorted neighbours of v.
  std::span<const int> neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  bool has_edge(int a, int b) const;
  bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }

  bool has_coords() const { return !coords_.empty(); }
  /// Requires has_coords().
  const Point& coord(int v) const { return coords_[v - 1]; }
  std::span<const Point> coords() const { return coords_; }

  bool operator==(const Graph& other) const {
    return vertex_count_ == other.vertex_count_ && edges_ == other.edges_ &&
           coords_ == other.coords_;
  }

 private:
  friend struct GraphBuilderAccess;

  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_{1};
  std::vector<Point> coords_;
};

struct BuildResult {
  Graph graph;
  /// Number of duplicate pairs dropped from the input.
  std::size_t collapsed = 0;
};

/// Builds a graph from a pair list. Duplicate pairs collapse; out-of-range
/// endpoints, self-loops and non-injective coordinates raise GraphError.
/// A coordinate map, when given, must cover every vertex.
BuildResult build_graph(int vertex_count, std::span<const std::pair<int, int>> pairs,
                        const std::optional<std::map<int, Point>>& coords = std::nullopt);
BuildResult build_graph(int vertex_count, std::initializer_list<std::pair<int, int>> pairs);

struct Bipartition {
  std::vector<int> side0;
  std::vector<int> side1;

  /// Side of v (0 or 1); -1 when absent.
  int side_of(int v) const;
  bool is_valid_for(const Graph& g) const;
};

/// Two-colouring of g, or nullopt when g has an odd cycle. When g carries
/// coordinates whose x+y parity classes form a valid split, side0 is the even
/// class. Otherwise each component's lowest vertex goes to side0.
std::optional<Bipartition> bipartition(const Graph& g);

bool is_connected(const Graph& g);

struct DegreeProfile {
  int max_degree = 0;
  int min_degree = 0;
  std::map<int, int> histogram;
};

DegreeProfile degree_profile(const Graph& g);

/// G minus the edges in f; vertex set and coordinates are kept.
Graph delete_edges(const Graph& g, std::span<const Edge> f);

Graph parse_graph_file(std::string_view text);
std::string emit_graph_file(const Graph& g);

}  // namespace resmatch
