#pragma once
// Naive Induced 2-Disjoint Paths: list every induced s-t path for both
// pairs and test all combinations. Exponential; small graphs only.

#include <optional>
#include <vector>

#include "i2dp/graph.hpp"

namespace oracle {

using i2dp::Graph;
using i2dp::Vertex;
using Path = std::vector<Vertex>;

inline std::vector<Path> induced_paths(const Graph& g, Vertex s, Vertex t) {
  std::vector<Path> out;
  if (s == t) {
    out.push_back({s});
    return out;
  }
  Path cur{s};
  std::vector<char> on(g.order(), 0);
  on[s] = 1;
  auto rec = [&](auto&& self) -> void {
    Vertex last = cur.back();
    if (last == t) {
      out.push_back(cur);
      return;
    }
    for (Vertex v : g.neighbors(last)) {
      if (on[v]) continue;
      bool chord = false;
      for (std::size_t k = 0; k + 1 < cur.size(); ++k)
        if (g.has_edge(cur[k], v)) chord = true;
      if (chord) continue;
      on[v] = 1;
      cur.push_back(v);
      self(self);
      cur.pop_back();
      on[v] = 0;
    }
  };
  rec(rec);
  return out;
}

inline bool compatible(const Graph& g, const Path& a, const Path& b) {
  for (Vertex x : a)
    for (Vertex y : b)
      if (x == y || g.has_edge(x, y)) return false;
  return true;
}

inline bool has_linkage(const Graph& g, Vertex s1, Vertex t1, Vertex s2, Vertex t2) {
  auto p1 = induced_paths(g, s1, t1);
  if (p1.empty()) return false;
  auto p2 = induced_paths(g, s2, t2);
  for (const auto& a : p1)
    for (const auto& b : p2)
      if (compatible(g, a, b)) return true;
  return false;
}

}  // namespace oracle
