#pragma once

#include <compare>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "i2dp/errors.hpp"
#include "i2dp/graph.hpp"
#include "i2dp/instance.hpp"

namespace i2dp {

enum class Dir { kN = 0, kS = 1 };
enum class Corner { kNW = 0, kNE = 1, kSW = 2, kSE = 3 };

inline const char* dir_name(Dir d) { return d == Dir::kN ? "N" : "S"; }
inline const char* corner_name(Corner c) {
  static const char* names[] = {"NW", "NE", "SW", "SE"};
  return names[static_cast<int>(c)];
}
inline Corner west(Dir d) { return d == Dir::kN ? Corner::kNW : Corner::kSW; }
inline Corner east(Dir d) { return d == Dir::kN ? Corner::kNE : Corner::kSE; }
inline constexpr Dir kDirs[] = {Dir::kN, Dir::kS};
inline constexpr Corner kCorners[] = {Corner::kNW, Corner::kNE, Corner::kSW, Corner::kSE};

/// Vertex of the reduction graph. Field use depends on kind:
///   Entry   u^d_j        (j in 1..m+1)
///   ClauseV v^corner_j(slot)   (slot is the 1-based literal position)
///   VarW    w^d_j for the occurrence of x_var in clause j
/// Labels order by kind, then fields; vertex ids follow this order.
struct VertexLabel {
  enum class Kind { kEntry = 0, kClauseV = 1, kVarW = 2 };
  Kind kind = Kind::kEntry;
  int var = 0;           // VarW
  bool positive = true;  // VarW
  int j = 0;
  int slot = 0;          // ClauseV
  Corner corner = Corner::kNW;
  Dir d = Dir::kN;       // Entry, VarW

  static VertexLabel entry(int j, Dir d) { return {Kind::kEntry, 0, true, j, 0, Corner::kNW, d}; }
  static VertexLabel clause_v(int j, int slot, Corner c) { return {Kind::kClauseV, 0, true, j, slot, c, Dir::kN}; }
  static VertexLabel var_w(int var, bool positive, int j, Dir d) { return {Kind::kVarW, var, positive, j, 0, Corner::kNW, d}; }

  auto key() const {
    switch (kind) {
      case Kind::kEntry: return std::tuple(0, j, static_cast<int>(d), 0, 0);
      case Kind::kClauseV: return std::tuple(1, j, slot, static_cast<int>(corner), 0);
      default: return std::tuple(2, var, positive ? 0 : 1, j, static_cast<int>(d));
    }
  }
  friend bool operator==(const VertexLabel& a, const VertexLabel& b) { return a.key() == b.key(); }
  friend auto operator<=>(const VertexLabel& a, const VertexLabel& b) { return a.key() <=> b.key(); }

  std::string str() const {
    switch (kind) {
      case Kind::kEntry: return "u:" + std::to_string(j) + ":" + dir_name(d);
      case Kind::kClauseV: return "v:" + std::to_string(j) + ":" + std::to_string(slot) + ":" + corner_name(corner);
      default:
        return "w:" + std::to_string(var) + ":" + (positive ? "+" : "-") + ":" + std::to_string(j) + ":" + dir_name(d);
    }
  }

  static std::optional<VertexLabel> parse(std::string_view s) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= s.size(); ++k)
      if (k == s.size() || s[k] == ':') {
        parts.push_back(s.substr(start, k - start));
        start = k + 1;
      }
    auto num = [](std::string_view t) -> std::optional<int> {
      auto v = detail::to_long(t);
      if (!v || *v < 1) return std::nullopt;
      return static_cast<int>(*v);
    };
    auto dir = [](std::string_view t) -> std::optional<Dir> {
      if (t == "N") return Dir::kN;
      if (t == "S") return Dir::kS;
      return std::nullopt;
    };
    if (parts[0] == "u" && parts.size() == 3) {
      auto j = num(parts[1]);
      auto d = dir(parts[2]);
      if (j && d) return entry(*j, *d);
    } else if (parts[0] == "v" && parts.size() == 4) {
      auto j = num(parts[1]);
      auto a = num(parts[2]);
      for (Corner c : kCorners)
        if (parts[3] == corner_name(c) && j && a) return clause_v(*j, *a, c);
    } else if (parts[0] == "w" && parts.size() == 5) {
      auto i = num(parts[1]);
      auto j = num(parts[3]);
      auto d = dir(parts[4]);
      if (i && j && d && (parts[2] == "+" || parts[2] == "-")) return var_w(*i, parts[2] == "+", *j, *d);
    }
    return std::nullopt;
  }
};

using ReductionGraph = LabeledGraph<VertexLabel>;

/// Vertices and edges of one gadget before the union is formed.
struct Fragment {
  std::vector<VertexLabel> vertices;
  std::vector<std::pair<VertexLabel, VertexLabel>> edges;
};

struct Occurrence {
  int j = 0;
  bool positive = true;
};

/// Biclique between the w-vertices of positive and negative occurrences.
inline Fragment build_variable_gadget(int var, const std::vector<Occurrence>& occ) {
  bool has_pos = false, has_neg = false;
  for (const auto& o : occ) (o.positive ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg)
    throw Error(ErrorCode::kPrecondition,
                "variable x" + std::to_string(var) + " occurs with one polarity only; normalize first");
  Fragment fr;
  for (const auto& o : occ)
    for (Dir d : kDirs) fr.vertices.push_back(VertexLabel::var_w(var, o.positive, o.j, d));
  for (const auto& p : occ) {
    if (!p.positive) continue;
    for (const auto& q : occ) {
      if (q.positive) continue;
      for (Dir dp : kDirs)
        for (Dir dq : kDirs)
          fr.edges.emplace_back(VertexLabel::var_w(var, true, p.j, dp), VertexLabel::var_w(var, false, q.j, dq));
    }
  }
  return fr;
}

/// Entry points u_j, u_{j+1}, four corners per literal, complete
/// multipartite edges between literal groups, and the entry-corner edges.
inline Fragment build_clause_gadget(int j, const Clause& literals) {
  const int k = static_cast<int>(literals.size());
  if (k < 2 || k > 3)
    throw Error(ErrorCode::kPrecondition, "clause " + std::to_string(j) + " has " + std::to_string(k) + " literals");
  Fragment fr;
  for (int jj : {j, j + 1})
    for (Dir d : kDirs) fr.vertices.push_back(VertexLabel::entry(jj, d));
  for (int a = 1; a <= k; ++a)
    for (Corner c : kCorners) fr.vertices.push_back(VertexLabel::clause_v(j, a, c));
  for (int a = 1; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b)
      for (Corner c : kCorners)
        for (Corner e : kCorners) fr.edges.emplace_back(VertexLabel::clause_v(j, a, c), VertexLabel::clause_v(j, b, e));
  for (int a = 1; a <= k; ++a)
    for (Dir d : kDirs) {
      fr.edges.emplace_back(VertexLabel::entry(j, d), VertexLabel::clause_v(j, a, west(d)));
      fr.edges.emplace_back(VertexLabel::clause_v(j, a, east(d)), VertexLabel::entry(j + 1, d));
    }
  return fr;
}

struct Terminals {
  Vertex s1 = -1, t1 = -1, s2 = -1, t2 = -1;
};

struct ReductionInstance {
  ReductionGraph graph;
  Terminals terminals;
  CnfInstance source;
  SideAssignment sides;

  int m() const { return source.m(); }
  Vertex v(const VertexLabel& l) const { return graph.at(l); }
};

/// Occurrence lists per variable (index var-1), in clause order.
inline std::vector<std::vector<Occurrence>> occurrences_by_variable(const CnfInstance& f) {
  std::vector<std::vector<Occurrence>> occ(f.num_vars);
  for (int j = 1; j <= f.m(); ++j)
    for (const auto& l : f.clauses[j - 1]) occ[l.var - 1].push_back({j, l.positive});
  return occ;
}

inline ReductionInstance assemble_reduction(const CnfInstance& f, const SideAssignment& sides) {
  if (f.m() < 1) throw Error(ErrorCode::kPrecondition, "reduction needs at least one clause");
  std::vector<Fragment> parts;
  for (int j = 1; j <= f.m(); ++j) parts.push_back(build_clause_gadget(j, f.clauses[j - 1]));
  auto occ = occurrences_by_variable(f);
  for (int i = 1; i <= f.num_vars; ++i)
    if (!occ[i - 1].empty()) parts.push_back(build_variable_gadget(i, occ[i - 1]));

  std::vector<VertexLabel> labels;
  for (const auto& p : parts) labels.insert(labels.end(), p.vertices.begin(), p.vertices.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());  // shared entry points

  ReductionInstance r;
  r.graph = ReductionGraph::from_labels(std::move(labels));
  for (const auto& p : parts)
    for (const auto& [a, b] : p.edges) r.graph.add_edge(a, b);
  // incidence: v^{dW} - w^d - v^{dE}
  for (int j = 1; j <= f.m(); ++j)
    for (int a = 1; a <= static_cast<int>(f.clauses[j - 1].size()); ++a) {
      const auto& l = f.clauses[j - 1][a - 1];
      for (Dir d : kDirs) {
        auto w = VertexLabel::var_w(l.var, l.positive, j, d);
        r.graph.add_edge(VertexLabel::clause_v(j, a, west(d)), w);
        r.graph.add_edge(w, VertexLabel::clause_v(j, a, east(d)));
      }
    }
  const int m = f.m();
  r.terminals = {r.graph.at(VertexLabel::entry(1, Dir::kN)), r.graph.at(VertexLabel::entry(m + 1, Dir::kN)),
                 r.graph.at(VertexLabel::entry(1, Dir::kS)), r.graph.at(VertexLabel::entry(m + 1, Dir::kS))};
  r.source = f;
  r.source.embedding.reset();
  r.sides = sides;
  return r;
}

/// 2(m+1) + sum 4|c_j| + sum 2 occ(x_i).
inline std::size_t expected_vertex_count(const CnfInstance& f) {
  std::size_t n = 2 * static_cast<std::size_t>(f.m() + 1);
  for (const auto& c : f.clauses) n += 4 * c.size() + 2 * c.size();
  return n;
}

}  // namespace i2dp
