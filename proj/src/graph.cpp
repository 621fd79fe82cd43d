#include "resmatch/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace resmatch {

struct GraphBuilderAccess {
  static Graph make(int n, std::vector<Edge> edges, std::vector<Point> coords) {
    Graph g;
    g.vertex_count_ = n;
    g.edges_ = std::move(edges);
    g.adjacency_.assign(static_cast<std::size_t>(n) + 1, {});
    for (const Edge& e : g.edges_) {
      g.adjacency_[e.u].push_back(e.v);
      g.adjacency_[e.v].push_back(e.u);
    }
    for (auto& row : g.adjacency_) std::sort(row.begin(), row.end());
    g.coords_ = std::move(coords);
    return g;
  }
};

namespace {

std::string pair_text(int a, int b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

bool Graph::has_edge(int a, int b) const {
  if (a < 1 || b < 1 || a > vertex_count_ || b > vertex_count_) return false;
  const auto& row = adjacency_[a];
  return std::binary_search(row.begin(), row.end(), b);
}

BuildResult build_graph(int vertex_count, std::span<const std::pair<int, int>> pairs,
                        const std::optional<std::map<int, Point>>& coords) {
  if (vertex_count < 0) throw GraphError("negative vertex count");
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [a, b] : pairs) {
    if (a < 1 || b < 1 || a > vertex_count || b > vertex_count)
      throw GraphError("endpoint out of range in pair " + pair_text(a, b));
    if (a == b) throw GraphError("self-loop in pair " + pair_text(a, b));
    edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  auto last = std::unique(edges.begin(), edges.end());
  BuildResult result;
  result.collapsed = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());

  std::vector<Point> points;
  if (coords && !coords->empty()) {
    points.resize(vertex_count);
    std::set<Point> seen;
    for (int v = 1; v <= vertex_count; ++v) {
      auto it = coords->find(v);
      if (it == coords->end())
        throw GraphError("vertex " + std::to_string(v) + " has no coordinate");
      if (!seen.insert(it->second).second)
        throw GraphError("coordinate of vertex " + std::to_string(v) + " is not unique");
      points[v - 1] = it->second;
    }
    if (coords->size() != static_cast<std::size_t>(vertex_count))
      throw GraphError("coordinate map names a vertex out of range");
  }
  result.graph = GraphBuilderAccess::make(vertex_count, std::move(edges), std::move(points));
  return result;
}

BuildResult build_graph(int vertex_count, std::initializer_list<std::pair<int, int>> pairs) {
  return build_graph(vertex_count, std::span<const std::pair<int, int>>(pairs.begin(), pairs.size()));
}

int Bipartition::side_of(int v) const {
  if (std::find(side0.begin(), side0.end(), v) != side0.end()) return 0;
  if (std::find(side1.begin(), side1.end(), v) != side1.end()) return 1;
  return -1;
}

bool Bipartition::is_valid_for(const Graph& g) const {
  std::vector<int> side(static_cast<std::size_t>(g.vertex_count()) + 1, -1);
  for (int v : side0) {
    if (v < 1 || v > g.vertex_count() || side[v] != -1) return false;
    side[v] = 0;
  }
  for (int v : side1) {
    if (v < 1 || v > g.vertex_count() || side[v] != -1) return false;
    side[v] = 1;
  }
  for (int v = 1; v <= g.vertex_count(); ++v)
    if (side[v] == -1) return false;
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const Edge& e) { return side[e.u] != side[e.v]; });
}

std::optional<Bipartition> bipartition(const Graph& g) {
  const int n = g.vertex_count();
  if (g.has_coords()) {
    auto parity = [&](int v) {
      const Point& p = g.coord(v);
      return static_cast<int>(((p.x + p.y) % 2 + 2) % 2);
    };
    bool split_ok = std::all_of(g.edges().begin(), g.edges().end(),
                                [&](const Edge& e) { return parity(e.u) != parity(e.v); });
    if (split_ok) {
      Bipartition b;
      for (int v = 1; v <= n; ++v) (parity(v) == 0 ? b.side0 : b.side1).push_back(v);
      return b;
    }
  }
  std::vector<int> color(static_cast<std::size_t>(n) + 1, -1);
  std::queue<int> queue;
  for (int s = 1; s <= n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop();
      for (int w : g.neighbors(v)) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          queue.push(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  Bipartition b;
  for (int v = 1; v <= n; ++v) (color[v] == 0 ? b.side0 : b.side1).push_back(v);
  return b;
}

bool is_connected(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> stack{1};
  seen[1] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

DegreeProfile degree_profile(const Graph& g) {
  DegreeProfile profile;
  if (g.vertex_count() == 0) return profile;
  profile.min_degree = g.degree(1);
  for (int v = 1; v <= g.vertex_count(); ++v) {
    int d = g.degree(v);
    profile.max_degree = std::max(profile.max_degree, d);
    profile.min_degree = std::min(profile.min_degree, d);
    ++profile.histogram[d];
  }
  return profile;
}

Graph delete_edges(const Graph& g, std::span<const Edge> f) {
  std::set<Edge> removed;
  for (const Edge& e : f) {
    if (!g.has_edge(e))
      throw GraphError("edge " + pair_text(e.u, e.v) + " is not in the graph");
    removed.insert(e);
  }
  std::vector<Edge> kept;
  kept.reserve(g.edge_count());
  for (const Edge& e : g.edges())
    if (!removed.count(e)) kept.push_back(e);
  std::vector<Point> coords(g.coords().begin(), g.coords().end());
  return GraphBuilderAccess::make(g.vertex_count(), std::move(kept), std::move(coords));
}

Graph parse_graph_file(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  int header_line = 0;
  int vertex_count = -1;
  long long declared_edges = -1;
  std::vector<std::pair<int, int>> pairs;
  std::map<int, Point> coords;

  auto read_int = [&](std::istringstream& fields, const char* what) {
    long long value = 0;
    if (!(fields >> value)) throw ParseError(line_no, std::string("expected ") + what);
    return value;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag[0] == '#') continue;
    if (tag == "p") {
      std::string kind;
      if (header_line) throw ParseError(line_no, "duplicate header");
      if (!(fields >> kind) || kind != "mg") throw ParseError(line_no, "malformed header, expected 'p mg <n> <m>'");
      long long n = read_int(fields, "vertex count");
      declared_edges = read_int(fields, "edge count");
      if (n < 0 || declared_edges < 0) throw ParseError(line_no, "malformed header, negative count");
      vertex_count = static_cast<int>(n);
      header_line = line_no;
    } else if (tag == "v" || tag == "e") {
      if (!header_line) throw ParseError(line_no, "record before header");
      long long a = read_int(fields, tag == "v" ? "vertex id" : "endpoint");
      long long b = read_int(fields, tag == "v" ? "x coordinate" : "endpoint");
      if (tag == "v") {
        long long y = read_int(fields, "y coordinate");
        if (a < 1 || a > vertex_count) throw ParseError(line_no, "vertex id out of range");
        if (!coords.emplace(static_cast<int>(a), Point{b, y}).second)
          throw ParseError(line_no, "duplicate coordinate record");
      } else {
        if (a < 1 || b < 1 || a > vertex_count || b > vertex_count)
          throw ParseError(line_no, "endpoint out of range");
        if (a == b) throw ParseError(line_no, "self-loop");
        pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
      }
    } else {
      throw ParseError(line_no, "unknown record tag '" + tag + "'");
    }
    std::string extra;
    if (fields >> extra && extra[0] != '#') throw ParseError(line_no, "trailing field '" + extra + "'");
  }
  if (!header_line) throw ParseError(line_no, "missing header");
  if (static_cast<long long>(pairs.size()) != declared_edges)
    throw ParseError(header_line, "header declares " + std::to_string(declared_edges) +
                                      " edges but file has " + std::to_string(pairs.size()));
  try {
    std::optional<std::map<int, Point>> coord_map;
    if (!coords.empty()) coord_map = std::move(coords);
    return build_graph(vertex_count, pairs, coord_map).graph;
  } catch (const GraphError& e) {
    throw ParseError(line_no, e.what());
  }
}

std::string emit_graph_file(const Graph& g) {
  std::ostringstream out;
  out << "p mg " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  if (g.has_coords())
    for (int v = 1; v <= g.vertex_count(); ++v)
      out << "v " << v << ' ' << g.coord(v).x << ' ' << g.coord(v).y << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << '\n';
  return out.str();
}

}  // namespace resmatch
