#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace i2dp {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Undirected simple graph on vertices 0..n-1. Neighbor lists are kept
/// sorted, and an adjacency bit matrix gives O(1) edge queries.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) { resize(n); }

  std::size_t order() const noexcept { return adj_.size(); }
  std::size_t size() const noexcept { return edge_count_; }

  Vertex add_vertex() {
    resize(order() + 1);
    return static_cast<Vertex>(order() - 1);
  }

  /// Adds uv; returns false if it was already present. Loops are rejected.
  bool add_edge(Vertex u, Vertex v) {
    check(u);
    check(v);
    if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    if (has_edge(u, v)) return false;
    insert_sorted(adj_[u], v);
    insert_sorted(adj_[v], u);
    set_bit(u, v);
    set_bit(v, u);
    ++edge_count_;
    return true;
  }

  bool remove_edge(Vertex u, Vertex v) {
    if (!has_edge(u, v)) return false;
    std::erase(adj_[u], v);
    std::erase(adj_[v], u);
    clear_bit(u, v);
    clear_bit(v, u);
    --edge_count_;
    return true;
  }

  bool has_edge(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= order() ||
        static_cast<std::size_t>(v) >= order())
      return false;
    return (bits_[static_cast<std::size_t>(u) * words_ + (static_cast<std::size_t>(v) >> 6)] >>
            (v & 63)) & 1U;
  }

  std::span<const Vertex> neighbors(Vertex v) const {
    check(v);
    return adj_[v];
  }

  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  int max_degree() const {
    int d = 0;
    for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
  }

  /// All edges as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < static_cast<Vertex>(order()); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  void check(Vertex v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= order())
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  }

  static void insert_sorted(std::vector<Vertex>& list, Vertex v) {
    list.insert(std::lower_bound(list.begin(), list.end(), v), v);
  }

  void resize(std::size_t n) {
    std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> bits(n * words, 0);
    for (std::size_t u = 0; u < adj_.size(); ++u)
      for (Vertex v : adj_[u]) bits[u * words + (static_cast<std::size_t>(v) >> 6)] |= std::uint64_t{1} << (v & 63);
    bits_ = std::move(bits);
    words_ = words;
    adj_.resize(n);
  }

  void set_bit(Vertex u, Vertex v) {
    bits_[static_cast<std::size_t>(u) * words_ + (static_cast<std::size_t>(v) >> 6)] |= std::uint64_t{1} << (v & 63);
  }
  void clear_bit(Vertex u, Vertex v) {
    bits_[static_cast<std::size_t>(u) * words_ + (static_cast<std::size_t>(v) >> 6)] &= ~(std::uint64_t{1} << (v & 63));
  }

  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> bits_;
  std::size_t words_ = 0;
  std::size_t edge_count_ = 0;
};

/// A graph whose vertices carry unique, totally ordered labels.
template <typename Label>
class LabeledGraph {
 public:
  LabeledGraph() = default;

  /// Builds a graph whose vertex ids follow the sorted order of `labels`.
  static LabeledGraph from_labels(std::vector<Label> labels) {
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
      throw std::invalid_argument("duplicate vertex label");
    LabeledGraph g;
    for (auto& l : labels) g.add_vertex(std::move(l));
    return g;
  }

  Vertex add_vertex(Label label) {
    if (index_.contains(label)) throw std::invalid_argument("duplicate vertex label");
    Vertex v = graph_.add_vertex();
    index_.emplace(label, v);
    labels_.push_back(std::move(label));
    return v;
  }

  bool add_edge(const Label& a, const Label& b) { return graph_.add_edge(at(a), at(b)); }
  bool add_edge(Vertex a, Vertex b) { return graph_.add_edge(a, b); }

  Vertex at(const Label& l) const {
    auto it = index_.find(l);
    if (it == index_.end()) throw std::out_of_range("unknown vertex label");
    return it->second;
  }
  std::optional<Vertex> find(const Label& l) const {
    auto it = index_.find(l);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Label& l) const { return index_.contains(l); }

  const Label& label(Vertex v) const { return labels_.at(static_cast<std::size_t>(v)); }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  const Graph& graph() const noexcept { return graph_; }
  Graph& mutable_graph() noexcept { return graph_; }
  std::size_t order() const noexcept { return graph_.order(); }

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.labels_ == b.labels_ && a.graph_ == b.graph_;
  }

 private:
  Graph graph_;
  std::vector<Label> labels_;
  std::map<Label, Vertex> index_;
};

// ---------------------------------------------------------------------------
// Traversal and connectivity

/// BFS distances from `src`; unreachable vertices get -1. Vertices with
/// `blocked[v]` set are never entered (the source is always entered).
inline std::vector<int> bfs_distances(const Graph& g, Vertex src,
                                      const std::vector<char>* blocked = nullptr) {
  std::vector<int> dist(g.order(), -1);
  std::queue<Vertex> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    for (Vertex v : g.neighbors(u)) {
      if (dist[v] != -1 || (blocked && (*blocked)[v])) continue;
      dist[v] = dist[u] + 1;
      q.push(v);
    }
  }
  return dist;
}

/// Shortest path from `src` to `dst` avoiding blocked vertices, breaking
/// ties toward smaller vertex ids. Empty if none.
inline std::vector<Vertex> bfs_path(const Graph& g, Vertex src, Vertex dst,
                                    const std::vector<char>* blocked = nullptr) {
  if (blocked && ((*blocked)[src] || (*blocked)[dst])) return {};
  // BFS from dst gives distances; walking forward from src along the
  // smallest neighbor that decreases the distance yields the least path.
  auto dist = bfs_distances(g, dst, blocked);
  if (dist[src] < 0) return {};
  std::vector<Vertex> path{src};
  Vertex cur = src;
  while (cur != dst) {
    for (Vertex v : g.neighbors(cur)) {
      if (dist[v] == dist[cur] - 1 && !(blocked && (*blocked)[v])) {
        cur = v;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

/// Component id per vertex (ids in order of smallest member), or -1 for
/// vertices excluded by `keep`.
inline std::vector<int> connected_components(const Graph& g,
                                             const std::vector<char>* keep = nullptr) {
  std::vector<int> comp(g.order(), -1);
  int next = 0;
  for (Vertex s = 0; s < static_cast<Vertex>(g.order()); ++s) {
    if (comp[s] != -1 || (keep && !(*keep)[s])) continue;
    std::vector<Vertex> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : g.neighbors(u)) {
        if (comp[v] != -1 || (keep && !(*keep)[v])) continue;
        comp[v] = next;
        stack.push_back(v);
      }
    }
    ++next;
  }
  return comp;
}

inline int count_components(const Graph& g, const std::vector<char>* keep = nullptr) {
  auto comp = connected_components(g, keep);
  int c = -1;
  for (int x : comp) c = std::max(c, x);
  return c + 1;
}

/// True iff the vertex set is nonempty and induces a connected subgraph.
inline bool is_connected_set(const Graph& g, std::span<const Vertex> set) {
  if (set.empty()) return false;
  std::vector<char> keep(g.order(), 0);
  for (Vertex v : set) keep[v] = 1;
  std::vector<char> seen(g.order(), 0);
  std::vector<Vertex> stack{set.front()};
  seen[set.front()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex v : g.neighbors(u)) {
      if (!keep[v] || seen[v]) continue;
      seen[v] = 1;
      ++reached;
      stack.push_back(v);
    }
  }
  std::size_t distinct = 0;
  for (char k : keep) distinct += k;
  return reached == distinct;
}

/// Induced subgraph on `vertices` (in the given order); vertex i of the
/// result corresponds to vertices[i].
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  Graph h(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (g.has_edge(vertices[i], vertices[j]))
        h.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return h;
}

struct CutStructure {
  std::vector<Vertex> cutvertices;  // sorted
  std::vector<Edge> bridges;        // (u < v), sorted
};

/// Tarjan low-link computation of cutvertices and bridges.
inline CutStructure cut_structure(const Graph& g) {
  const int n = static_cast<int>(g.order());
  std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
  std::vector<char> is_cut(n, 0);
  std::vector<Edge> bridges;
  int timer = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    // Iterative DFS: (vertex, next neighbor index).
    std::vector<std::pair<Vertex, std::size_t>> stack{{root, 0}};
    disc[root] = low[root] = timer++;
    int root_children = 0;
    while (!stack.empty()) {
      auto& [u, idx] = stack.back();
      auto nbrs = g.neighbors(u);
      if (idx < nbrs.size()) {
        Vertex v = nbrs[idx++];
        if (disc[v] == -1) {
          parent[v] = u;
          disc[v] = low[v] = timer++;
          if (u == root) ++root_children;
          stack.emplace_back(v, 0);
        } else if (v != parent[u]) {
          low[u] = std::min(low[u], disc[v]);
        }
      } else {
        Vertex child = u;
        stack.pop_back();
        if (!stack.empty()) {
          Vertex p = stack.back().first;
          low[p] = std::min(low[p], low[child]);
          if (low[child] > disc[p]) bridges.emplace_back(std::min(p, child), std::max(p, child));
          if (p != root && low[child] >= disc[p]) is_cut[p] = 1;
        }
      }
    }
    if (root_children > 1) is_cut[root] = 1;
  }
  CutStructure out;
  for (Vertex v = 0; v < n; ++v)
    if (is_cut[v]) out.cutvertices.push_back(v);
  std::sort(bridges.begin(), bridges.end());
  out.bridges = std::move(bridges);
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism (backtracking; intended for graphs of a few dozen vertices)

/// Returns a bijection f with uv in E(a) <=> f(u)f(v) in E(b), if one exists.
inline std::optional<std::vector<Vertex>> find_isomorphism(const Graph& a, const Graph& b) {
  const int n = static_cast<int>(a.order());
  if (a.order() != b.order() || a.size() != b.size()) return std::nullopt;
  std::vector<int> da(n), db(n);
  for (int v = 0; v < n; ++v) {
    da[v] = a.degree(v);
    db[v] = b.degree(v);
  }
  {
    auto sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  // Order a's vertices so each one (after the first of its component) has a
  // previously placed neighbor; this maximizes early pruning.
  std::vector<Vertex> order;
  std::vector<char> placed(n, 0);
  while (static_cast<int>(order.size()) < n) {
    Vertex start = -1;
    for (Vertex v = 0; v < n; ++v)
      if (!placed[v] && (start == -1 || da[v] > da[start])) start = v;
    std::vector<Vertex> frontier{start};
    placed[start] = 1;
    while (!frontier.empty()) {
      Vertex u = frontier.front();
      frontier.erase(frontier.begin());
      order.push_back(u);
      for (Vertex v : a.neighbors(u))
        if (!placed[v]) {
          placed[v] = 1;
          frontier.push_back(v);
        }
    }
  }
  std::vector<Vertex> map(n, -1);
  std::vector<char> used(n, 0);
  auto extend = [&](auto&& self, int depth) -> bool {
    if (depth == n) return true;
    Vertex u = order[depth];
    for (Vertex cand = 0; cand < n; ++cand) {
      if (used[cand] || db[cand] != da[u]) continue;
      bool ok = true;
      for (int k = 0; k < depth && ok; ++k) {
        Vertex w = order[k];
        if (a.has_edge(u, w) != b.has_edge(cand, map[w])) ok = false;
      }
      if (!ok) continue;
      map[u] = cand;
      used[cand] = 1;
      if (self(self, depth + 1)) return true;
      used[cand] = 0;
      map[u] = -1;
    }
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  return map;
}

inline bool are_isomorphic(const Graph& a, const Graph& b) {
  return find_isomorphism(a, b).has_value();
}

// ---------------------------------------------------------------------------
// Small constructors used across modules and tests

inline Graph path_graph(int n) {
  Graph g(static_cast<std::size_t>(n));
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline Graph complete_bipartite(int p, int q) {
  Graph g(static_cast<std::size_t>(p + q));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) g.add_edge(i, p + j);
  return g;
}

/// Replaces every edge of `g` by a path with `s` internal vertices.
inline Graph subdivide(const Graph& g, int s) {
  Graph h(g.order());
  for (auto [u, v] : g.edges()) {
    Vertex prev = u;
    for (int i = 0; i < s; ++i) {
      Vertex w = h.add_vertex();
      h.add_edge(prev, w);
      prev = w;
    }
    h.add_edge(prev, v);
  }
  return h;
}

}  // namespace i2dp
