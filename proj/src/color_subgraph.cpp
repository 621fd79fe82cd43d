#include "resmatch/color_subgraph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "resmatch/matching.hpp"

namespace resmatch {

namespace {

// Dinic max flow on a small integral network.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : head_(nodes, -1), level_(nodes), cursor_(nodes) {}

  int add_arc(int from, int to, int capacity) {
    arcs_.push_back({to, head_[from], capacity});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, head_[to], 0});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
    return static_cast<int>(arcs_.size()) - 2;
  }

  int flow_on(int arc) const { return arcs_[arc ^ 1].capacity; }

  int max_flow(int source, int sink) {
    int total = 0;
    while (build_levels(source, sink)) {
      cursor_ = head_;
      while (int pushed = augment(source, sink, std::numeric_limits<int>::max())) total += pushed;
    }
    return total;
  }

 private:
  struct Arc {
    int to;
    int next;
    int capacity;
  };

  bool build_levels(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<int> queue{source};
    level_[source] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int v = queue[i];
      for (int a = head_[v]; a != -1; a = arcs_[a].next) {
        if (arcs_[a].capacity > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[v] + 1;
          queue.push_back(arcs_[a].to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  int augment(int v, int sink, int limit) {
    if (v == sink) return limit;
    for (int& a = cursor_[v]; a != -1; a = arcs_[a].next) {
      Arc& arc = arcs_[a];
      if (arc.capacity <= 0 || level_[arc.to] != level_[v] + 1) continue;
      if (int pushed = augment(arc.to, sink, std::min(limit, arc.capacity))) {
        arc.capacity -= pushed;
        arcs_[a ^ 1].capacity += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> cursor_;
};

// Splits a graph of maximum degree two without odd cycles into two matchings.
std::vector<std::vector<Edge>> two_color(int vertex_count, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertex_count) + 1);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());

  std::vector<std::vector<Edge>> classes(2);
  std::vector<char> seen(static_cast<std::size_t>(vertex_count) + 1, 0);
  auto walk = [&](int start) {
    int previous = 0;
    int current = start;
    int color = 0;
    seen[start] = 1;
    for (;;) {
      int next = 0;
      for (int w : adj[current]) {
        if (w == previous) continue;
        next = w;
        break;
      }
      if (next == 0) return;
      classes[color].emplace_back(current, next);
      color ^= 1;
      if (seen[next]) return;  // closed a cycle
      seen[next] = 1;
      previous = current;
      current = next;
    }
  };
  // Paths first, from their lower endpoint.
  for (int v = 1; v <= vertex_count; ++v)
    if (!seen[v] && adj[v].size() == 1) walk(v);
  for (int v = 1; v <= vertex_count; ++v)
    if (!seen[v] && adj[v].size() == 2) walk(v);
  for (auto& c : classes) std::sort(c.begin(), c.end());
  return classes;
}

struct ColoringSearch {
  std::span<const Edge> edges;
  int k;
  std::vector<unsigned> used_colors;  // per-vertex bitmask
  int best = 0;

  void run(std::size_t i, int current, int colors_opened) {
    best = std::max(best, current);
    if (i == edges.size()) return;
    if (current + static_cast<int>(edges.size() - i) <= best) return;
    const Edge& e = edges[i];
    unsigned busy = used_colors[e.u] | used_colors[e.v];
    int limit = std::min(k, colors_opened + 1);
    for (int c = 0; c < limit; ++c) {
      unsigned bit = 1u << c;
      if (busy & bit) continue;
      used_colors[e.u] |= bit;
      used_colors[e.v] |= bit;
      run(i + 1, current + 1, std::max(colors_opened, c + 1));
      used_colors[e.u] &= ~bit;
      used_colors[e.v] &= ~bit;
    }
    run(i + 1, current, colors_opened);
  }
};

}  // namespace

ColorableResult nu2_bipartite(const Graph& g, const Bipartition& b) {
  if (!b.is_valid_for(g)) throw std::invalid_argument("invalid bipartition for graph");
  const int n = g.vertex_count();
  const int source = 0;
  const int sink = n + 1;
  FlowNetwork network(n + 2);
  for (int v : b.side0) network.add_arc(source, v, 2);
  for (int v : b.side1) network.add_arc(v, sink, 2);

  std::vector<std::pair<int, Edge>> edge_arcs;
  std::vector<int> side(static_cast<std::size_t>(n) + 1, 0);
  for (int v : b.side1) side[v] = 1;
  for (const Edge& e : g.edges()) {
    int from = side[e.u] == 0 ? e.u : e.v;
    int to = side[e.u] == 0 ? e.v : e.u;
    edge_arcs.emplace_back(network.add_arc(from, to, 1), e);
  }
  network.max_flow(source, sink);

  std::vector<Edge> chosen;
  for (const auto& [arc, e] : edge_arcs)
    if (network.flow_on(arc) == 1) chosen.push_back(e);

  ColorableResult result;
  result.k = 2;
  result.size = static_cast<int>(chosen.size());
  result.classes = two_color(n, chosen);
  return result;
}

int nu_k_bruteforce(const Graph& g, int k, std::size_t edge_cap) {
  if (k < 0 || k > 31) throw std::invalid_argument("nu_k_bruteforce: k must be in [0, 31]");
  if (g.edge_count() > edge_cap)
    throw OracleCapExceeded("nu_k_bruteforce: " + std::to_string(g.edge_count()) +
                            " edges exceeds cap of " + std::to_string(edge_cap));
  if (k == 0) return 0;
  ColoringSearch search{g.edges(), k, std::vector<unsigned>(static_cast<std::size_t>(g.vertex_count()) + 1, 0u)};
  search.run(0, 0, 0);
  return search.best;
}

int upper_bound_L(const Graph& g, const Bipartition& b) {
  return nu2_bipartite(g, b).size - static_cast<int>(max_matching_bipartite(g, b).size());
}

}  // namespace resmatch
