#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "i2dp/errors.hpp"
#include "i2dp/gadgets.hpp"
#include "i2dp/graph.hpp"
#include "i2dp/instance.hpp"
#include "i2dp/planarity.hpp"

namespace i2dp {

inline constexpr int kClausePathLength = 16;  // 17 vertices
inline constexpr int kVariableCycleLength = 12;
inline constexpr int kPowerRadius = 16;

/// Subcubic planar host: clause j becomes the path p_0(j)..p_16(j), each
/// occurring variable a 12-cycle q_0..q_11. Literal block b of a clause
/// covers p_{2+4b}..p_{5+4b} and attaches to its variable at p_{3+4b}.
struct PowerHost {
  LabeledGraph<std::string> graph;
  RotationSystem rotation;                  // certified planar embedding
  int m = 0;
  std::vector<std::vector<int>> block_of;   // [j-1][slot] -> block
  std::map<int, std::vector<int>> cycle;    // var -> clause indices j in cycle order
  std::map<int, Vertex> cycle_base;         // var -> vertex id of q_0

  Vertex p(int j, int k) const { return static_cast<Vertex>((j - 1) * (kClausePathLength + 1) + k); }
  Vertex q(int var, int k) const { return cycle_base.at(var) + k % kVariableCycleLength; }
};

/// Builds the host from a certified clause-linked planar embedding.
inline PowerHost build_planar_host(const CnfInstance& f, const PlanarEmbedding& e) {
  const int m = f.m();
  PowerHost h;
  h.m = m;
  auto& g = h.graph;
  for (int j = 1; j <= m; ++j)
    for (int k = 0; k <= kClausePathLength; ++k) g.add_vertex("p:" + std::to_string(j) + ":" + std::to_string(k));
  auto occ = occurrences_by_variable(f);
  for (int i = 1; i <= f.num_vars; ++i) {
    if (occ[i - 1].empty()) continue;
    if (2 * occ[i - 1].size() > static_cast<std::size_t>(kVariableCycleLength))
      throw Error(ErrorCode::kPrecondition, "variable x" + std::to_string(i) + " has too many occurrences for its cycle");
    h.cycle_base[i] = static_cast<Vertex>(g.order());
    for (int k = 0; k < kVariableCycleLength; ++k) g.add_vertex("q:" + std::to_string(i) + ":" + std::to_string(k));
    for (int k = 0; k < kVariableCycleLength; ++k) g.add_edge(h.q(i, k), h.q(i, k + 1));
  }
  for (int j = 1; j <= m; ++j)
    for (int k = 0; k < kClausePathLength; ++k) g.add_edge(h.p(j, k), h.p(j, k + 1));
  for (int j = 1; j < m; ++j) g.add_edge(h.p(j, kClausePathLength), h.p(j + 1, 0));
  if (m >= 3) g.add_edge(h.p(m, kClausePathLength), h.p(1, 0));

  // blocks: upper literals left to right, then lower literals left to right
  h.block_of.resize(m);
  for (int j = 1; j <= m; ++j) {
    const auto& cs = e.sides.clauses[j - 1];
    auto& blk = h.block_of[j - 1];
    blk.assign(f.clauses[j - 1].size(), -1);
    int b = 0;
    for (int a : cs.upper) blk[a] = b++;
    for (int a : cs.lower) blk[a] = b++;
    if (b != static_cast<int>(blk.size()) || b > 3)
      throw Error(ErrorCode::kPrecondition, "clause " + std::to_string(j) + " has no valid literal blocks");
  }
  // variable cycles follow the rotation at the variable vertex
  for (const auto& [var, base] : h.cycle_base) {
    (void)base;
    auto& order = h.cycle[var];
    for (Vertex c : e.rotation[e.aug.var_vertex(var)]) order.push_back(e.aug.index_of(c));
    for (std::size_t r = 0; r < order.size(); ++r) {
      int j = order[r];
      int slot = -1;
      for (int a = 0; a < static_cast<int>(f.clauses[j - 1].size()); ++a)
        if (f.clauses[j - 1][a].var == var) slot = a;
      g.add_edge(h.q(var, 2 * static_cast<int>(r)), h.p(j, 3 + 4 * h.block_of[j - 1][slot]));
    }
  }
  if (g.graph().max_degree() > 3) throw Error(ErrorCode::kInternal, "host is not subcubic");
  auto pl = test_planarity(g.graph());
  if (!pl.planar || !satisfies_euler(g.graph(), pl.rotation)) throw Error(ErrorCode::kInternal, "host is not planar");
  h.rotation = std::move(pl.rotation);
  return h;
}

struct PowerWitness {
  Graph host;
  RotationSystem host_embedding;
  std::vector<Vertex> vmap;  // reduction vertex -> host vertex
  int radius = kPowerRadius;
};

/// Places every reduction vertex on its clause path or variable cycle.
inline std::vector<Vertex> assign_vertices(const ReductionInstance& r, const PowerHost& h) {
  const int m = r.m();
  std::vector<Vertex> vmap(r.graph.order(), -1);
  std::map<std::pair<int, int>, int> rank;  // (var, j) -> position on the cycle
  for (const auto& [var, order] : h.cycle)
    for (std::size_t k = 0; k < order.size(); ++k) rank[{var, order[k]}] = static_cast<int>(k);
  for (Vertex v = 0; v < static_cast<Vertex>(r.graph.order()); ++v) {
    const auto& l = r.graph.label(v);
    switch (l.kind) {
      case VertexLabel::Kind::kEntry:
        if (l.d == Dir::kN)
          vmap[v] = l.j == 1 ? h.p(1, 1) : h.p(l.j - 1, kClausePathLength);
        else
          vmap[v] = l.j == m + 1 ? h.p(m, kClausePathLength - 1) : h.p(l.j, 0);
        break;
      case VertexLabel::Kind::kClauseV:
        vmap[v] = h.p(l.j, 2 + 4 * h.block_of[l.j - 1][l.slot - 1] + static_cast<int>(l.corner));
        break;
      case VertexLabel::Kind::kVarW: {
        auto it = rank.find({l.var, l.j});
        if (it == rank.end()) throw Error(ErrorCode::kInternal, "occurrence missing from its variable cycle");
        vmap[v] = h.q(l.var, 2 * it->second + (l.d == Dir::kN ? 0 : 1));
        break;
      }
    }
  }
  auto sorted = vmap;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::kInternal, "vertex placement is not injective");
  return vmap;
}

struct PowerAudit {
  bool ok = false;
  int max_stretch = 0;
  std::optional<Edge> offending;  // first G-edge over the radius (reduction ids)
};

/// BFS from every mapped endpoint; unreachable pairs count as infinite.
inline PowerAudit verify_power_containment(const Graph& g, const PowerWitness& w) {
  if (w.vmap.size() != g.order()) throw Error(ErrorCode::kPrecondition, "map does not cover the graph");
  PowerAudit a;
  a.ok = true;
  for (Vertex u = 0; u < static_cast<Vertex>(g.order()); ++u) {
    bool has_later = false;
    for (Vertex v : g.neighbors(u)) has_later |= v > u;
    if (!has_later) continue;
    auto dist = bfs_distances(w.host, w.vmap[u]);
    for (Vertex v : g.neighbors(u)) {
      if (v < u) continue;
      int d = dist[w.vmap[v]];
      if (d < 0) d = std::numeric_limits<int>::max();
      a.max_stretch = std::max(a.max_stretch, d);
      if (d > w.radius && a.ok) {
        a.ok = false;
        a.offending = Edge{u, v};
      }
    }
  }
  return a;
}

inline int min_power_radius(const Graph& g, const Graph& host, const std::vector<Vertex>& vmap) {
  PowerWitness w{host, {}, vmap, std::numeric_limits<int>::max()};
  return verify_power_containment(g, w).max_stretch;
}

inline PowerWitness build_power_witness(const ReductionInstance& r, const PlanarEmbedding& e) {
  auto h = build_planar_host(r.source, e);
  PowerWitness w;
  w.vmap = assign_vertices(r, h);
  w.host = h.graph.graph();
  w.host_embedding = h.rotation;
  return w;
}

}  // namespace i2dp
