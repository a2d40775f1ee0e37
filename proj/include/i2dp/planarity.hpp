#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

#include "i2dp/graph.hpp"

namespace i2dp {

/// rotation[v] lists the neighbors of v in counterclockwise order.
using RotationSystem = std::vector<std::vector<Vertex>>;

/// A dart is a directed edge (from, to). Faces are closed dart cycles.
using Face = std::vector<Edge>;

/// True iff rotation[v] is a permutation of N(v) for every v.
inline bool is_rotation_of(const Graph& g, const RotationSystem& rot) {
  if (rot.size() != g.order()) return false;
  for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v) {
    auto sorted = rot[v];
    std::sort(sorted.begin(), sorted.end());
    auto nb = g.neighbors(v);
    if (!std::equal(sorted.begin(), sorted.end(), nb.begin(), nb.end())) return false;
  }
  return true;
}

namespace detail {
inline std::size_t position_in(const std::vector<Vertex>& list, Vertex x) {
  return static_cast<std::size_t>(std::find(list.begin(), list.end(), x) - list.begin());
}
}  // namespace detail

/// Traces the faces of a rotation system. The face containing dart u->v is
/// the one on its left: the walk continues from v to the neighbor that
/// precedes u in v's counterclockwise rotation.
inline std::vector<Face> trace_faces(const Graph& g, const RotationSystem& rot) {
  const auto n = g.order();
  // slot[v][k] = whether dart v -> rot[v][k] is already on some face
  std::vector<std::vector<char>> used(n);
  for (std::size_t v = 0; v < n; ++v) used[v].assign(rot[v].size(), 0);
  std::vector<Face> faces;
  for (Vertex s = 0; s < static_cast<Vertex>(n); ++s) {
    for (std::size_t k = 0; k < rot[s].size(); ++k) {
      if (used[s][k]) continue;
      Face f;
      Vertex u = s;
      std::size_t idx = k;
      while (!used[u][idx]) {
        used[u][idx] = 1;
        Vertex v = rot[u][idx];
        f.emplace_back(u, v);
        const auto& rv = rot[v];
        std::size_t back = detail::position_in(rv, u);
        idx = (back + rv.size() - 1) % rv.size();
        u = v;
      }
      faces.push_back(std::move(f));
    }
  }
  return faces;
}

/// Euler characteristic test: the rotation system is a planar embedding iff
/// V - E + F = 2C summed over components (isolated vertices count one face).
inline bool satisfies_euler(const Graph& g, const RotationSystem& rot) {
  if (!is_rotation_of(g, rot)) return false;
  long faces = static_cast<long>(trace_faces(g, rot).size());
  long isolated = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(g.order()); ++v)
    if (g.degree(v) == 0) ++isolated;
  long comps = count_components(g);
  long lhs = static_cast<long>(g.order()) - static_cast<long>(g.size()) + faces + isolated;
  return lhs == 2 * comps;
}

struct PlanarityResult {
  bool planar = false;
  RotationSystem rotation;         // set when planar
  std::vector<Edge> kuratowski;    // set when not planar; (u < v), sorted
};

/// Boyer–Myrvold planarity test. Edges are fed in lexicographic order so the
/// returned rotation is deterministic for a given graph.
inline PlanarityResult test_planarity(const Graph& g) {
  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                       boost::property<boost::vertex_index_t, int>,
                                       boost::property<boost::edge_index_t, int>>;
  using BEdge = boost::graph_traits<BGraph>::edge_descriptor;
  BGraph bg(g.order());
  int idx = 0;
  for (auto [u, v] : g.edges()) {
    auto [e, ok] = boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), bg);
    (void)ok;
    boost::put(boost::edge_index, bg, e, idx++);
  }
  std::vector<std::vector<BEdge>> emb(g.order());
  auto emb_map = boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, bg));
  std::vector<BEdge> kur;
  PlanarityResult out;
  out.planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg, boost::boyer_myrvold_params::embedding = emb_map,
      boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kur));
  if (out.planar) {
    out.rotation.resize(g.order());
    for (std::size_t v = 0; v < g.order(); ++v)
      for (const auto& e : emb[v]) {
        auto a = static_cast<Vertex>(boost::source(e, bg));
        auto b = static_cast<Vertex>(boost::target(e, bg));
        out.rotation[v].push_back(a == static_cast<Vertex>(v) ? b : a);
      }
  } else {
    for (const auto& e : kur) {
      auto a = static_cast<Vertex>(boost::source(e, bg));
      auto b = static_cast<Vertex>(boost::target(e, bg));
      out.kuratowski.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.kuratowski.begin(), out.kuratowski.end());
  }
  return out;
}

inline bool is_planar(const Graph& g) { return test_planarity(g).planar; }

}  // namespace i2dp
