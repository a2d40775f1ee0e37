#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "i2dp/errors.hpp"
#include "i2dp/gadgets.hpp"
#include "i2dp/graph.hpp"
#include "i2dp/ipaths.hpp"

namespace i2dp {

using NamedGraph = LabeledGraph<std::string>;

enum class PatternKind { kH, kHprime };

inline const char* pattern_name(PatternKind k) { return k == PatternKind::kH ? "H" : "H'"; }

/// H or H'. Vertices of A_l are named after the drawing: branch vertices
/// u<l><i>, v<l><j>, subdivision vertices w<l><i><j> (second vertex of a
/// doubly subdivided edge gets a 'b'; the extra vertices of H' get 'l'/'r').
struct PatternGraph {
  PatternKind kind = PatternKind::kH;
  NamedGraph graph;
  std::array<std::vector<Vertex>, 4> parts;
  Vertex s = -1, t = -1, sp = -1, tp = -1;
  std::array<Vertex, 4> attach{};  // neighbor of t, s, t', s' in A_1..A_4
};

namespace detail {

struct PartSpec {
  int l;
  std::pair<int, int> attach;
  std::optional<std::pair<int, int>> doubled;
};

inline void add_part(NamedGraph& g, const PartSpec& spec, bool hprime, std::vector<Vertex>& members) {
  const std::string L = std::to_string(spec.l);
  auto vx = [&](const std::string& name) {
    members.push_back(g.add_vertex(name));
    return name;
  };
  for (int i = 1; i <= 3; ++i) vx("u" + L + std::to_string(i));
  for (int j = 1; j <= 3; ++j) vx("v" + L + std::to_string(j));
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const std::string u = "u" + L + std::to_string(i), v = "v" + L + std::to_string(j);
      const std::string w = "w" + L + std::to_string(i) + std::to_string(j);
      std::vector<std::string> chain{u};
      if (spec.doubled == std::pair{i, j}) {
        chain.push_back(vx(w));
        chain.push_back(vx(w + "b"));
      } else if (hprime && spec.attach == std::pair{i, j}) {
        chain.push_back(vx(w + "l"));
        chain.push_back(vx(w));
        chain.push_back(vx(w + "r"));
      } else {
        chain.push_back(vx(w));
      }
      chain.push_back(v);
      for (std::size_t k = 0; k + 1 < chain.size(); ++k) g.add_edge(chain[k], chain[k + 1]);
    }
}

}  // namespace detail

inline PatternGraph build_pattern(PatternKind kind) {
  const bool hp = kind == PatternKind::kHprime;
  const detail::PartSpec specs[4] = {
      {1, {3, 3}, std::nullopt},
      {2, {1, 1}, std::nullopt},
      {3, {3, 3}, std::pair{1, 1}},
      {4, {1, 1}, std::pair{3, 3}},
  };
  PatternGraph p;
  p.kind = kind;
  for (int k = 0; k < 4; ++k) detail::add_part(p.graph, specs[k], hp, p.parts[k]);
  p.s = p.graph.add_vertex("s");
  p.t = p.graph.add_vertex("t");
  p.sp = p.graph.add_vertex("s'");
  p.tp = p.graph.add_vertex("t'");
  for (int k = 0; k < 4; ++k) {
    const auto& [i, j] = specs[k].attach;
    p.attach[k] = p.graph.at("w" + std::to_string(specs[k].l) + std::to_string(i) + std::to_string(j));
  }
  p.graph.add_edge(p.attach[0], p.t);
  p.graph.add_edge(p.t, p.s);
  p.graph.add_edge(p.s, p.attach[1]);
  p.graph.add_edge(p.attach[2], p.tp);
  p.graph.add_edge(p.tp, p.sp);
  p.graph.add_edge(p.sp, p.attach[3]);
  return p;
}

inline PatternGraph build_H() { return build_pattern(PatternKind::kH); }
inline PatternGraph build_Hprime() { return build_pattern(PatternKind::kHprime); }

// ---------------------------------------------------------------------------
// Canonical shapes and structural predicates

inline Graph one_subdivided_k33() { return subdivide(complete_bipartite(3, 3), 1); }

/// K_{3,3} with every edge subdivided once except one, subdivided twice.
inline Graph k33_one_double() {
  auto g = one_subdivided_k33();
  // edge (0, 3) went to subdivision vertex 6
  Vertex w = 6;
  g.remove_edge(w, 3);
  Vertex x = g.add_vertex();
  g.add_edge(w, x);
  g.add_edge(x, 3);
  return g;
}

struct StructureReport {
  std::vector<Vertex> cutvertices;
  std::vector<Edge> bridges;
  int max_degree = 0;
  bool is_one_subdivided_k33 = false;
  bool is_k33_one_double = false;
};

inline StructureReport structural_predicates(const Graph& g) {
  StructureReport r;
  auto cs = cut_structure(g);
  r.cutvertices = std::move(cs.cutvertices);
  r.bridges = std::move(cs.bridges);
  r.max_degree = g.max_degree();
  if (g.order() <= 16) {
    r.is_one_subdivided_k33 = g.order() == 15 && are_isomorphic(g, one_subdivided_k33());
    r.is_k33_one_double = g.order() == 16 && are_isomorphic(g, k33_one_double());
  }
  return r;
}

/// Violations of the invariants the pattern is supposed to satisfy; empty
/// when everything holds.
inline std::vector<std::string> pattern_violations(const PatternGraph& p) {
  std::vector<std::string> bad;
  const Graph& g = p.graph.graph();
  const std::size_t want = p.kind == PatternKind::kH ? 66 : 74;
  if (g.order() != want) bad.push_back("has " + std::to_string(g.order()) + " vertices, expected " + std::to_string(want));
  if (g.max_degree() > 3) bad.push_back("not subcubic");
  for (Vertex x : {p.s, p.t, p.sp, p.tp})
    if (g.degree(x) != 2) bad.push_back(p.graph.label(x) + " has degree " + std::to_string(g.degree(x)));
  if (!g.has_edge(p.s, p.t) || !g.has_edge(p.sp, p.tp)) bad.push_back("missing st or s't'");
  for (int k = 0; k < 4; ++k) {
    auto sub = induced_subgraph(g, p.parts[k]);
    auto rep = structural_predicates(sub);
    const std::string name = "A" + std::to_string(k + 1);
    if (p.kind == PatternKind::kH) {
      bool ok = k < 2 ? rep.is_one_subdivided_k33 : rep.is_k33_one_double;
      if (!ok) bad.push_back(name + " has the wrong shape");
    }
    if (!rep.cutvertices.empty() || !rep.bridges.empty()) bad.push_back(name + " is not 2-connected");
  }
  if (p.kind == PatternKind::kHprime)
    for (auto [a, b] : g.edges()) {
      if (g.degree(a) != 2 && g.degree(b) != 2)
        bad.push_back("edge " + p.graph.label(a) + "-" + p.graph.label(b) + " avoids degree-2 vertices");
      if (g.degree(a) == 3 && g.degree(b) == 3) bad.push_back("adjacent degree-3 pair " + p.graph.label(a) + "-" + p.graph.label(b));
    }
  return bad;
}

// ---------------------------------------------------------------------------
// Composition

struct ComposedInstance {
  NamedGraph graph;  // G' keeps its vertex ids 0..|V(G')|-1
  PatternGraph pattern;
  std::size_t gprime_order = 0;
  std::vector<Vertex> from_pattern;        // pattern vertex -> composed vertex
  std::array<std::vector<Vertex>, 4> B;    // images of A_1..A_4
  std::array<Vertex, 4> terminals{};       // s1, t1, s2, t2
};

/// Disjoint union of G' and the pattern minus st and s't', with s=s1,
/// t=t1, s'=s2, t'=t2.
inline ComposedInstance compose(const PatternGraph& p, const ReductionInstance& r) {
  ComposedInstance c;
  c.pattern = p;
  const auto& gp = r.graph;
  c.gprime_order = gp.order();
  for (Vertex v = 0; v < static_cast<Vertex>(gp.order()); ++v) c.graph.add_vertex(gp.label(v).str());
  for (auto [a, b] : gp.graph().edges()) c.graph.add_edge(a, b);
  const auto& T = r.terminals;
  c.terminals = {T.s1, T.t1, T.s2, T.t2};
  c.from_pattern.assign(p.graph.order(), -1);
  c.from_pattern[p.s] = T.s1;
  c.from_pattern[p.t] = T.t1;
  c.from_pattern[p.sp] = T.s2;
  c.from_pattern[p.tp] = T.t2;
  for (int k = 0; k < 4; ++k)
    for (Vertex x : p.parts[k]) {
      Vertex y = c.graph.add_vertex("B" + std::to_string(k + 1) + "." + p.graph.label(x));
      c.from_pattern[x] = y;
      c.B[k].push_back(y);
    }
  for (auto [a, b] : p.graph.graph().edges()) {
    if ((a == p.s && b == p.t) || (a == p.t && b == p.s) || (a == p.sp && b == p.tp) || (a == p.tp && b == p.sp)) continue;
    c.graph.add_edge(c.from_pattern[a], c.from_pattern[b]);
  }
  return c;
}

struct CutPremiseReport {
  bool terminals_cut = true;  // each B_i hangs off one terminal
  bool no_exit = true;        // no G'-G' path leaves V(G')
  std::vector<std::string> failures;
  bool ok() const { return terminals_cut && no_exit; }
};

inline CutPremiseReport check_cut_premises(const ComposedInstance& c) {
  CutPremiseReport rep;
  const Graph& g = c.graph.graph();
  const std::size_t n = g.order();
  // attachment terminal of B_1..B_4: t1, s1, t2, s2
  const Vertex hang[4] = {c.terminals[1], c.terminals[0], c.terminals[3], c.terminals[2]};
  for (int k = 0; k < 4; ++k) {
    std::vector<char> keep(n, 1);
    keep[hang[k]] = 0;
    auto comp = connected_components(g, &keep);
    const int id = comp[c.B[k].front()];
    std::vector<char> inB(n, 0);
    for (Vertex x : c.B[k]) inB[x] = 1;
    bool exact = true;
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v)
      if ((comp[v] == id) != static_cast<bool>(inB[v])) exact = false;
    bool touches = false;
    for (Vertex x : g.neighbors(hang[k])) touches |= static_cast<bool>(inB[x]);
    if (!exact || !touches) {
      rep.terminals_cut = false;
      rep.failures.push_back(c.graph.label(hang[k]) + " does not separate B" + std::to_string(k + 1));
    }
  }
  std::vector<char> keep(n, 0);
  for (Vertex v = static_cast<Vertex>(c.gprime_order); v < static_cast<Vertex>(n); ++v) keep[v] = 1;
  auto comp = connected_components(g, &keep);
  std::vector<std::vector<Vertex>> contacts;
  for (Vertex v = static_cast<Vertex>(c.gprime_order); v < static_cast<Vertex>(n); ++v)
    for (Vertex x : g.neighbors(v)) {
      if (x >= static_cast<Vertex>(c.gprime_order)) continue;
      if (static_cast<int>(contacts.size()) <= comp[v]) contacts.resize(comp[v] + 1);
      auto& list = contacts[comp[v]];
      if (std::find(list.begin(), list.end(), x) == list.end()) list.push_back(x);
    }
  for (const auto& list : contacts)
    if (list.size() > 1) {
      rep.no_exit = false;
      rep.failures.push_back("a component outside G' touches " + std::to_string(list.size()) + " vertices of G'");
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Models

struct SubdivisionModel {
  std::vector<Vertex> phi;          // per pattern vertex
  std::vector<Path> paths;          // per pattern edge, in H.edges() order
  friend bool operator==(const SubdivisionModel&, const SubdivisionModel&) = default;
};

struct MinorModel {
  std::vector<std::vector<Vertex>> branch;  // per pattern vertex
  friend bool operator==(const MinorModel&, const MinorModel&) = default;
};

struct ModelCheck {
  bool ok = true;
  std::string violation;
  explicit operator bool() const { return ok; }
};

inline ModelCheck model_fail(std::string why) { return {false, std::move(why)}; }

inline ModelCheck check_subdivision_model(const Graph& G, const Graph& H, const SubdivisionModel& m) {
  const auto n = static_cast<Vertex>(G.order());
  const auto edges = H.edges();
  if (m.phi.size() != H.order() || m.paths.size() != edges.size())
    throw Error(ErrorCode::kPrecondition, "model does not match the pattern's vertex and edge counts");
  auto check_ref = [&](Vertex v) {
    if (v < 0 || v >= n) throw Error(ErrorCode::kPrecondition, "model references unknown vertex " + std::to_string(v));
  };
  // owner: -2 branch vertex, k >= 0 interior of path k
  std::vector<int> owner(G.order(), -1);
  for (std::size_t x = 0; x < m.phi.size(); ++x) {
    check_ref(m.phi[x]);
    if (owner[m.phi[x]] != -1) return model_fail("branching map is not injective at " + std::to_string(m.phi[x]));
    owner[m.phi[x]] = -2;
  }
  std::vector<std::vector<char>> path_edge(G.order());
  std::vector<Edge> used_edges;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& P = m.paths[k];
    for (Vertex v : P) check_ref(v);
    auto [a, b] = edges[k];
    if (P.size() < 2) return model_fail("path for edge " + std::to_string(k) + " is too short");
    bool fwd = P.front() == m.phi[a] && P.back() == m.phi[b];
    bool rev = P.front() == m.phi[b] && P.back() == m.phi[a];
    if (!fwd && !rev) return model_fail("path for edge " + std::to_string(k) + " has wrong endpoints");
    for (std::size_t q = 0; q + 1 < P.size(); ++q) {
      if (!G.has_edge(P[q], P[q + 1]))
        return model_fail("path for edge " + std::to_string(k) + " uses non-edge " + std::to_string(P[q]) + "-" +
                          std::to_string(P[q + 1]));
      used_edges.emplace_back(std::min(P[q], P[q + 1]), std::max(P[q], P[q + 1]));
    }
    for (std::size_t q = 1; q + 1 < P.size(); ++q) {
      if (owner[P[q]] != -1) return model_fail("vertex " + std::to_string(P[q]) + " is used twice");
      owner[P[q]] = static_cast<int>(k);
    }
  }
  std::sort(used_edges.begin(), used_edges.end());
  if (std::adjacent_find(used_edges.begin(), used_edges.end()) != used_edges.end())
    return model_fail("two paths share an edge");
  for (Vertex u = 0; u < n; ++u) {
    if (owner[u] == -1) continue;
    for (Vertex v : G.neighbors(u)) {
      if (v <= u || owner[v] == -1) continue;
      if (!std::binary_search(used_edges.begin(), used_edges.end(), Edge{u, v}))
        return model_fail("edge " + std::to_string(u) + "-" + std::to_string(v) + " is not on any path");
    }
  }
  return {};
}

inline ModelCheck check_minor_model(const Graph& G, const Graph& H, const MinorModel& m) {
  const auto n = static_cast<Vertex>(G.order());
  if (m.branch.size() != H.order()) throw Error(ErrorCode::kPrecondition, "model does not have one branch set per pattern vertex");
  std::vector<int> owner(G.order(), -1);
  for (std::size_t x = 0; x < m.branch.size(); ++x) {
    if (m.branch[x].empty()) return model_fail("branch set " + std::to_string(x) + " is empty");
    for (Vertex v : m.branch[x]) {
      if (v < 0 || v >= n) throw Error(ErrorCode::kPrecondition, "model references unknown vertex " + std::to_string(v));
      if (owner[v] != -1) return model_fail("vertex " + std::to_string(v) + " lies in two branch sets");
      owner[v] = static_cast<int>(x);
    }
    if (!is_connected_set(G, m.branch[x])) return model_fail("branch set " + std::to_string(x) + " is disconnected");
  }
  const std::size_t h = H.order();
  std::vector<char> adj(h * h, 0);
  for (Vertex u = 0; u < n; ++u) {
    if (owner[u] < 0) continue;
    for (Vertex v : G.neighbors(u))
      if (owner[v] >= 0 && owner[v] != owner[u]) adj[owner[u] * h + owner[v]] = 1;
  }
  for (std::size_t a = 0; a < h; ++a)
    for (std::size_t b = a + 1; b < h; ++b) {
      bool want = H.has_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
      if (want && !adj[a * h + b]) return model_fail("branch sets " + std::to_string(a) + " and " + std::to_string(b) + " are not adjacent");
      if (!want && adj[a * h + b])
        return model_fail("branch sets " + std::to_string(a) + " and " + std::to_string(b) + " are adjacent without a pattern edge");
    }
  return {};
}

/// Single-vertex deletion test.
inline bool is_minimal_minor_model(const Graph& G, const Graph& H, const MinorModel& m) {
  if (auto c = check_minor_model(G, H, m); !c) throw Error(ErrorCode::kPrecondition, "invalid minor model: " + c.violation);
  for (std::size_t x = 0; x < m.branch.size(); ++x) {
    if (m.branch[x].size() < 2) continue;
    for (std::size_t k = 0; k < m.branch[x].size(); ++k) {
      MinorModel smaller = m;
      smaller.branch[x].erase(smaller.branch[x].begin() + static_cast<long>(k));
      if (check_minor_model(G, H, smaller)) return false;
    }
  }
  return true;
}

inline constexpr std::size_t kMaxExhaustiveMinimality = 10;

/// The definition as stated: no tuple of subsets other than the model itself
/// is again a model. Exponential; guarded by total model size.
inline bool is_minimal_minor_model_exhaustive(const Graph& G, const Graph& H, const MinorModel& m) {
  if (auto c = check_minor_model(G, H, m); !c) throw Error(ErrorCode::kPrecondition, "invalid minor model: " + c.violation);
  std::size_t total = 0;
  for (const auto& b : m.branch) total += b.size();
  if (total > kMaxExhaustiveMinimality)
    throw Error(ErrorCode::kGuard, "exhaustive minimality needs a model with at most 10 vertices");
  const std::size_t h = m.branch.size();
  std::vector<std::uint32_t> mask(h);
  for (std::size_t x = 0; x < h; ++x) mask[x] = (1u << m.branch[x].size()) - 1;
  // odometer over nonempty submasks
  std::vector<std::uint32_t> cur = mask;
  while (true) {
    bool proper = cur != mask;
    if (proper) {
      MinorModel sub;
      for (std::size_t x = 0; x < h; ++x) {
        std::vector<Vertex> b;
        for (std::size_t k = 0; k < m.branch[x].size(); ++k)
          if (cur[x] >> k & 1) b.push_back(m.branch[x][k]);
        sub.branch.push_back(std::move(b));
      }
      if (check_minor_model(G, H, sub)) return false;
    }
    std::size_t x = 0;
    for (; x < h; ++x) {
      // next smaller nonempty submask of mask[x], wrapping to mask[x]
      std::uint32_t nxt = (cur[x] - 1) & mask[x];
      if (nxt != 0) {
        cur[x] = nxt;
        break;
      }
      cur[x] = mask[x];
    }
    if (x == h) break;
  }
  return true;
}

/// Greedy single-vertex deletion to a fixpoint.
inline MinorModel minimize_minor_model(const Graph& G, const Graph& H, MinorModel m) {
  if (auto c = check_minor_model(G, H, m); !c) throw Error(ErrorCode::kPrecondition, "invalid minor model: " + c.violation);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t x = 0; x < m.branch.size() && !changed; ++x)
      for (std::size_t k = 0; k < m.branch[x].size() && m.branch[x].size() > 1; ++k) {
        MinorModel smaller = m;
        smaller.branch[x].erase(smaller.branch[x].begin() + static_cast<long>(k));
        if (check_minor_model(G, H, smaller)) {
          m = std::move(smaller);
          changed = true;
          break;
        }
      }
  }
  return m;
}

/// Each path's interior joins the branch set of its first endpoint.
inline MinorModel minor_from_subdivision(const Graph& H, const SubdivisionModel& s) {
  MinorModel m;
  for (Vertex x : s.phi) m.branch.push_back({x});
  auto edges = H.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& P = s.paths[k];
    Vertex a = P.front() == s.phi[edges[k].first] ? edges[k].first : edges[k].second;
    for (std::size_t q = 1; q + 1 < P.size(); ++q) m.branch[a].push_back(P[q]);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Finders (tiny inputs only)

struct FindOptions {
  std::size_t max_pattern = 6;
  std::size_t max_host = 12;
  bool override_guard = false;
};

namespace detail {

inline void check_guard(const Graph& G, const Graph& H, const FindOptions& opt) {
  if (opt.override_guard) return;
  if (H.order() > opt.max_pattern || G.order() > opt.max_host)
    throw Error(ErrorCode::kGuard, "finder size guard exceeded (pattern " + std::to_string(H.order()) + ", host " +
                                       std::to_string(G.order()) + ")");
}

struct SubdivisionSearch {
  const Graph& G;
  const Graph& H;
  std::vector<Edge> edges;
  std::vector<Vertex> phi;
  std::vector<Path> paths;
  std::vector<int> used;  // 0 free, 1 branch, 2 interior

  bool assign(std::size_t x) {
    if (x == H.order()) return route(0);
    for (Vertex v = 0; v < static_cast<Vertex>(G.order()); ++v) {
      if (used[v] || G.degree(v) < H.degree(static_cast<Vertex>(x))) continue;
      bool ok = true;
      for (std::size_t y = 0; y < x && ok; ++y)
        if (G.has_edge(v, phi[y]) && !H.has_edge(static_cast<Vertex>(x), static_cast<Vertex>(y))) ok = false;
      if (!ok) continue;
      phi[x] = v;
      used[v] = 1;
      if (assign(x + 1)) return true;
      used[v] = 0;
    }
    return false;
  }

  bool route(std::size_t k) {
    if (k == edges.size()) return true;
    Vertex a = phi[edges[k].first], b = phi[edges[k].second];
    if (G.has_edge(a, b)) {
      paths[k] = {a, b};
      return route(k + 1);
    }
    Path p{a};
    return extend(k, p, b);
  }

  // interior vertices see only their two path neighbors among used vertices
  bool extend(std::size_t k, Path& p, Vertex b) {
    Vertex last = p.back();
    for (Vertex x : G.neighbors(last)) {
      if (used[x]) continue;
      bool near_b = false, bad = false;
      for (Vertex y : G.neighbors(x)) {
        if (y == last) continue;
        if (y == b)
          near_b = true;
        else if (used[y] || std::find(p.begin(), p.end(), y) != p.end())
          bad = true;
      }
      if (bad) continue;
      used[x] = 2;
      p.push_back(x);
      if (near_b) {
        p.push_back(b);
        paths[k] = p;
        if (route(k + 1)) return true;
        p.pop_back();
      } else if (extend(k, p, b)) {
        return true;
      }
      p.pop_back();
      used[x] = 0;
    }
    return false;
  }
};

}  // namespace detail

/// Exhaustive backtracking; the first model in search order, or none.
inline std::optional<SubdivisionModel> find_subdivision_model(const Graph& G, const Graph& H, const FindOptions& opt = {}) {
  detail::check_guard(G, H, opt);
  detail::SubdivisionSearch s{G, H, H.edges(), std::vector<Vertex>(H.order(), -1), {}, std::vector<int>(G.order(), 0)};
  s.paths.resize(s.edges.size());
  if (!s.assign(0)) return std::nullopt;
  SubdivisionModel m{s.phi, s.paths};
  if (!check_subdivision_model(G, H, m)) throw Error(ErrorCode::kInternal, "subdivision finder produced an invalid model");
  return m;
}

inline std::optional<MinorModel> find_minor_model(const Graph& G, const Graph& H, const FindOptions& opt = {}) {
  detail::check_guard(G, H, opt);
  const std::size_t n = G.order(), h = H.order();
  if (n > 63) throw Error(ErrorCode::kGuard, "minor finder supports at most 63 host vertices");
  if (h > n) return std::nullopt;
  std::vector<std::uint64_t> nb(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (Vertex u : G.neighbors(static_cast<Vertex>(v))) nb[v] |= std::uint64_t{1} << u;
  auto connected = [&](std::uint64_t S) {
    std::uint64_t seen = S & (~S + 1), frontier = seen;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) next |= nb[std::countr_zero(f)];
      next &= S & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == S;
  };
  auto nbhd = [&](std::uint64_t S) {
    std::uint64_t r = 0;
    for (std::uint64_t f = S; f; f &= f - 1) r |= nb[std::countr_zero(f)];
    return r & ~S;
  };
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> X(h, 0), NX(h, 0);
  auto rec = [&](auto&& self, std::size_t x, std::uint64_t used) -> bool {
    if (x == h) return true;
    const std::uint64_t avail = all & ~used;
    // submasks of avail in increasing order
    for (std::uint64_t S = (avail & (~avail + 1)); S; S = (S - avail) & avail) {
      if (!connected(S)) continue;
      std::uint64_t N = nbhd(S);
      bool ok = true;
      for (std::size_t y = 0; y < x && ok; ++y) {
        bool adj = (N & X[y]) != 0;
        if (adj != H.has_edge(static_cast<Vertex>(x), static_cast<Vertex>(y))) ok = false;
      }
      if (!ok) continue;
      X[x] = S;
      NX[x] = N;
      if (self(self, x + 1, used | S)) return true;
    }
    return false;
  };
  if (!rec(rec, 0, 0)) return std::nullopt;
  MinorModel m;
  for (std::size_t x = 0; x < h; ++x) {
    std::vector<Vertex> b;
    for (std::uint64_t f = X[x]; f; f &= f - 1) b.push_back(static_cast<Vertex>(std::countr_zero(f)));
    m.branch.push_back(std::move(b));
  }
  if (!check_minor_model(G, H, m)) throw Error(ErrorCode::kInternal, "minor finder produced an invalid model");
  return m;
}

// ---------------------------------------------------------------------------
// Forward direction: explicit models from a linkage

/// Pattern vertices map onto their copies; st and s't' are realized by the
/// witness paths. Witness vertices are ids of G' (= composed ids).
inline SubdivisionModel subdivision_model_from_paths(const ComposedInstance& c, const PathWitness& w) {
  if (w.paths.size() != 2) throw Error(ErrorCode::kInvalidWitness, "witness must contain two paths");
  const auto& T = c.terminals;
  const auto& p1 = w.paths[0];
  const auto& p2 = w.paths[1];
  if (p1.empty() || p2.empty() || p1.front() != T[0] || p1.back() != T[1] || p2.front() != T[2] || p2.back() != T[3])
    throw Error(ErrorCode::kInvalidWitness, "witness paths do not join the terminal pairs");
  for (const auto& P : w.paths)
    for (Vertex v : P)
      if (v < 0 || v >= static_cast<Vertex>(c.gprime_order))
        throw Error(ErrorCode::kInvalidWitness, "witness leaves the reduction graph");
  auto chk = is_mutually_induced(c.graph.graph(), w.paths);
  if (!chk) throw Error(ErrorCode::kInvalidWitness, "witness is not mutually induced: " + chk.message);
  const auto& p = c.pattern;
  SubdivisionModel m;
  m.phi = c.from_pattern;
  for (auto [a, b] : p.graph.graph().edges()) {
    auto oriented = [&](const Path& P) {
      Path q = P;
      if (q.front() != c.from_pattern[a]) std::reverse(q.begin(), q.end());
      return q;
    };
    if ((a == p.s && b == p.t) || (a == p.t && b == p.s))
      m.paths.push_back(oriented(p1));
    else if ((a == p.sp && b == p.tp) || (a == p.tp && b == p.sp))
      m.paths.push_back(oriented(p2));
    else
      m.paths.push_back({c.from_pattern[a], c.from_pattern[b]});
  }
  return m;
}

inline MinorModel minor_model_from_paths(const ComposedInstance& c, const PathWitness& w) {
  return minor_from_subdivision(c.pattern.graph.graph(), subdivision_model_from_paths(c, w));
}

}  // namespace i2dp
