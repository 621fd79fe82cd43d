#include "resmatch/matching.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace resmatch {

namespace {

constexpr int kNone = -1;

// Fisher-Yates driven directly by mt19937_64 so the order is identical across
// standard library implementations.
std::vector<int> scan_order(int n, std::uint64_t seed) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (seed == kDefaultSeed) return order;
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(order[i], order[j]);
  }
  return order;
}

// Edmonds' algorithm with explicit blossom contraction over 0-indexed labels.
class BlossomMatcher {
 public:
  explicit BlossomMatcher(std::vector<std::vector<int>> adjacency)
      : n_(static_cast<int>(adjacency.size())),
        adj_(std::move(adjacency)),
        match_(n_, kNone),
        parent_(n_),
        base_(n_),
        used_(n_),
        in_blossom_(n_),
        lca_mark_(n_) {}

  std::vector<int> solve() {
    // Greedy start: lowest free neighbour first.
    for (int v = 0; v < n_; ++v) {
      if (match_[v] != kNone) continue;
      for (int w : adj_[v]) {
        if (match_[w] == kNone) {
          match_[v] = w;
          match_[w] = v;
          break;
        }
      }
    }
    // A root with no augmenting path never gains one later.
    for (int root = 0; root < n_; ++root) {
      if (match_[root] != kNone) continue;
      int v = find_path(root);
      while (v != kNone) {
        int pv = parent_[v];
        int next = match_[pv];
        match_[v] = pv;
        match_[pv] = v;
        v = next;
      }
    }
    return match_;
  }

 private:
  int lca(int a, int b) {
    ++stamp_;
    for (;;) {
      a = base_[a];
      lca_mark_[a] = stamp_;
      if (match_[a] == kNone) break;
      a = parent_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (lca_mark_[b] == stamp_) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = 1;
      in_blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  int find_path(int root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), kNone);
    std::iota(base_.begin(), base_.end(), 0);
    queue_.clear();
    used_[root] = 1;
    queue_.push_back(root);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      int v = queue_[head];
      for (int to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != kNone && parent_[match_[to]] != kNone)) {
          int blossom_base = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
          mark_path(v, blossom_base, to);
          mark_path(to, blossom_base, v);
          for (int i = 0; i < n_; ++i) {
            if (!in_blossom_[base_[i]]) continue;
            base_[i] = blossom_base;
            if (!used_[i]) {
              used_[i] = 1;
              queue_.push_back(i);
            }
          }
        } else if (parent_[to] == kNone) {
          parent_[to] = v;
          if (match_[to] == kNone) return to;
          used_[match_[to]] = 1;
          queue_.push_back(match_[to]);
        }
      }
    }
    return kNone;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_;
  std::vector<int> parent_;
  std::vector<int> base_;
  std::vector<char> used_;
  std::vector<char> in_blossom_;
  std::vector<unsigned> lca_mark_;
  unsigned stamp_ = 0;
  std::vector<int> queue_;
};

Matching from_mate(int host_size, const std::vector<int>& mate_of_vertex) {
  Matching m;
  m.host_size = host_size;
  for (int v = 1; v <= host_size; ++v) {
    int w = mate_of_vertex[v];
    if (w != kNone && v < w) m.edges.emplace_back(v, w);
  }
  return m;
}

struct BruteforceSearch {
  std::span<const Edge> edges;
  std::vector<char> used;
  int best = 0;

  void run(std::size_t i, int current, int free_vertices) {
    best = std::max(best, current);
    if (i == edges.size()) return;
    int remaining = static_cast<int>(edges.size() - i);
    if (current + std::min(remaining, free_vertices / 2) <= best) return;
    const Edge& e = edges[i];
    if (!used[e.u] && !used[e.v]) {
      used[e.u] = used[e.v] = 1;
      run(i + 1, current + 1, free_vertices - 2);
      used[e.u] = used[e.v] = 0;
    }
    run(i + 1, current, free_vertices);
  }
};

}  // namespace

void canonicalize(Matching& m) {
  std::sort(m.edges.begin(), m.edges.end());
  m.edges.erase(std::unique(m.edges.begin(), m.edges.end()), m.edges.end());
}

Matching max_matching(const Graph& g, std::uint64_t seed) {
  const int n = g.vertex_count();
  // order[label] = vertex - 1; label_of[vertex - 1] = label.
  std::vector<int> order = scan_order(n, seed);
  std::vector<int> label_of(n);
  for (int label = 0; label < n; ++label) label_of[order[label]] = label;

  std::vector<std::vector<int>> adjacency(n);
  for (int label = 0; label < n; ++label) {
    for (int w : g.neighbors(order[label] + 1)) adjacency[label].push_back(label_of[w - 1]);
    std::sort(adjacency[label].begin(), adjacency[label].end());
  }
  std::vector<int> mate_by_label = BlossomMatcher(std::move(adjacency)).solve();

  std::vector<int> mate(static_cast<std::size_t>(n) + 1, kNone);
  for (int label = 0; label < n; ++label)
    if (mate_by_label[label] != kNone) mate[order[label] + 1] = order[mate_by_label[label]] + 1;
  return from_mate(n, mate);
}

Matching max_matching_bipartite(const Graph& g, const Bipartition& b) {
  if (!b.is_valid_for(g)) throw std::invalid_argument("invalid bipartition for graph");
  const int n = g.vertex_count();
  const int left_count = static_cast<int>(b.side0.size());
  const int right_count = static_cast<int>(b.side1.size());
  std::vector<int> index(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < left_count; ++i) index[b.side0[i]] = i;
  for (int i = 0; i < right_count; ++i) index[b.side1[i]] = i;

  std::vector<std::vector<int>> adj(left_count);
  for (int i = 0; i < left_count; ++i) {
    for (int w : g.neighbors(b.side0[i])) adj[i].push_back(index[w]);
    std::sort(adj[i].begin(), adj[i].end());
  }

  std::vector<int> pair_left(left_count, kNone);
  std::vector<int> pair_right(right_count, kNone);
  std::vector<int> dist(left_count);
  std::vector<std::size_t> cursor(left_count);
  constexpr int kInf = 1 << 29;

  auto bfs = [&] {
    std::vector<int> queue;
    for (int u = 0; u < left_count; ++u) {
      if (pair_left[u] == kNone) {
        dist[u] = 0;
        queue.push_back(u);
      } else {
        dist[u] = kInf;
      }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      for (int w : adj[u]) {
        int next = pair_right[w];
        if (next == kNone) {
          found = true;
        } else if (dist[next] == kInf) {
          dist[next] = dist[u] + 1;
          queue.push_back(next);
        }
      }
    }
    return found;
  };

  // Iterative layered DFS; avoids recursion depth on long paths.
  auto dfs = [&](int start) {
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int u = stack.back();
      bool advanced = false;
      while (cursor[u] < adj[u].size()) {
        int w = adj[u][cursor[u]];
        int next = pair_right[w];
        if (next == kNone) {
          // Flip along the stack.
          for (std::size_t k = stack.size(); k-- > 0;) {
            int left = stack[k];
            int right = adj[left][cursor[left]];
            pair_right[right] = left;
            pair_left[left] = right;
          }
          return true;
        }
        if (dist[next] == dist[u] + 1) {
          stack.push_back(next);
          advanced = true;
          break;
        }
        ++cursor[u];
      }
      if (!advanced) {
        dist[u] = kInf;
        stack.pop_back();
        if (!stack.empty()) ++cursor[stack.back()];
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(cursor.begin(), cursor.end(), 0);
    for (int u = 0; u < left_count; ++u)
      if (pair_left[u] == kNone) dfs(u);
  }

  Matching m;
  m.host_size = n;
  for (int u = 0; u < left_count; ++u)
    if (pair_left[u] != kNone) m.edges.emplace_back(b.side0[u], b.side1[pair_left[u]]);
  canonicalize(m);
  return m;
}

int nu(const Graph& g) { return static_cast<int>(max_matching(g).size()); }

MatchingFlags validate_matching(const Graph& g, const Matching& f) {
  MatchingFlags flags;
  std::vector<char> covered(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  for (const Edge& e : f.edges) {
    if (!g.has_edge(e) || covered[e.u] || covered[e.v]) return flags;
    covered[e.u] = covered[e.v] = 1;
  }
  flags.valid = true;
  flags.maximal = std::none_of(g.edges().begin(), g.edges().end(),
                               [&](const Edge& e) { return !covered[e.u] && !covered[e.v]; });
  flags.maximum = static_cast<int>(f.size()) == nu(g);
  flags.perfect = 2 * static_cast<long long>(f.size()) == g.vertex_count();
  return flags;
}

int nu_bruteforce(const Graph& g, std::size_t edge_cap) {
  if (g.edge_count() > edge_cap)
    throw OracleCapExceeded("nu_bruteforce: " + std::to_string(g.edge_count()) +
                            " edges exceeds cap of " + std::to_string(edge_cap));
  BruteforceSearch search{g.edges(), std::vector<char>(static_cast<std::size_t>(g.vertex_count()) + 1, 0)};
  search.run(0, 0, g.vertex_count());
  return search.best;
}

std::string emit_matching(const Matching& m) {
  Matching sorted = m;
  canonicalize(sorted);
  std::ostringstream out;
  for (const Edge& e : sorted.edges) out << "m " << e.u << ' ' << e.v << '\n';
  return out.str();
}

}  // namespace resmatch
