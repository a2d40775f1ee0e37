#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <compare>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "i2dp/errors.hpp"
#include "i2dp/graph.hpp"
#include "i2dp/planarity.hpp"

namespace i2dp {

struct Literal {
  int var = 0;
  bool positive = true;

  int dimacs() const { return positive ? var : -var; }
  std::string str() const { return (positive ? "x" : "-x") + std::to_string(var); }
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

/// One "c embed" row: a vertex name and its counterclockwise neighbor list.
struct EmbeddingRow {
  std::string vertex;
  std::vector<std::string> neighbors;
  std::size_t line = 0;
};

struct CnfInstance {
  int num_vars = 0;
  std::vector<Clause> clauses;
  // rotation rows supplied with the input, if any
  std::optional<std::vector<EmbeddingRow>> embedding;

  int m() const { return static_cast<int>(clauses.size()); }
};

/// Truth value per variable; values[i-1] is x_i.
struct Assignment {
  std::vector<bool> values;

  bool at(int var) const { return values.at(static_cast<std::size_t>(var - 1)); }
  bool satisfies(const Literal& l) const { return at(l.var) == l.positive; }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Index of the first clause (0-based) that `a` falsifies, if any.
inline std::optional<int> first_violated_clause(const CnfInstance& f, const Assignment& a) {
  for (int j = 0; j < f.m(); ++j) {
    bool sat = std::any_of(f.clauses[j].begin(), f.clauses[j].end(),
                           [&](const Literal& l) { return a.satisfies(l); });
    if (!sat) return j;
  }
  return std::nullopt;
}

inline bool satisfies(const CnfInstance& f, const Assignment& a) {
  return !first_violated_clause(f, a).has_value();
}

// ---------------------------------------------------------------------------
// DIMACS

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<long> to_long(std::string_view tok) {
  long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) return std::nullopt;
  return v;
}

}  // namespace detail

/// Parses DIMACS CNF. Lines "c embed <v> <n1> <n2> ..." (vertex names x<i>
/// and c<j>) give a rotation of the augmented incidence graph.
inline CnfInstance parse_dimacs(std::string_view text) {
  CnfInstance f;
  bool have_header = false;
  long declared_clauses = 0;
  Clause current;
  std::size_t current_line = 0;
  std::vector<EmbeddingRow> rows;

  auto finish_clause = [&](std::size_t line) {
    if (current.size() < 2)
      throw ParseError("ClauseTooSmall", line, "clause has " + std::to_string(current.size()) + " literal(s)");
    if (current.size() > 3)
      throw ParseError("ClauseTooLarge", line, "clause has " + std::to_string(current.size()) + " literals");
    f.clauses.push_back(std::move(current));
    current.clear();
  };

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (toks[0] == "c") {
      if (toks.size() >= 2 && toks[1] == "embed") {
        if (toks.size() < 3) throw ParseError("MalformedEmbedding", lineno, "missing vertex name");
        EmbeddingRow row{std::string(toks[2]), {}, lineno};
        for (std::size_t k = 3; k < toks.size(); ++k) row.neighbors.emplace_back(toks[k]);
        rows.push_back(std::move(row));
      }
      continue;
    }
    if (toks[0] == "p") {
      if (have_header) throw ParseError("MalformedHeader", lineno, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf") throw ParseError("MalformedHeader", lineno, "expected 'p cnf <vars> <clauses>'");
      auto n = detail::to_long(toks[2]);
      auto m = detail::to_long(toks[3]);
      if (!n || !m || *n < 0 || *m < 0 || *n > 1'000'000)
        throw ParseError("MalformedHeader", lineno, "bad counts");
      f.num_vars = static_cast<int>(*n);
      declared_clauses = *m;
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("MissingHeader", lineno, "clause before 'p cnf' header");
    for (auto tok : toks) {
      auto v = detail::to_long(tok);
      if (!v) throw ParseError("BadToken", lineno, "'" + std::string(tok) + "' is not an integer");
      if (*v == 0) {
        finish_clause(current_line ? current_line : lineno);
        current_line = 0;
        continue;
      }
      long var = *v < 0 ? -*v : *v;
      if (var > f.num_vars)
        throw ParseError("VariableOutOfRange", lineno, "variable " + std::to_string(var) + " exceeds " + std::to_string(f.num_vars));
      Literal lit{static_cast<int>(var), *v > 0};
      for (const auto& other : current)
        if (other.var == lit.var)
          throw ParseError("RepeatedVariable", lineno, "variable " + std::to_string(var) + " repeated in clause");
      if (current.empty()) current_line = lineno;
      current.push_back(lit);
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError("MissingHeader", 0, "no 'p cnf' header");
  if (!current.empty()) throw ParseError("UnterminatedClause", current_line, "clause not terminated by 0");
  if (static_cast<long>(f.clauses.size()) != declared_clauses)
    throw ParseError("ClauseCountMismatch", 0,
                     "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                         std::to_string(f.clauses.size()));
  if (!rows.empty()) f.embedding = std::move(rows);
  return f;
}

inline std::string write_dimacs(const CnfInstance& f, bool with_embedding = true) {
  std::ostringstream os;
  os << "p cnf " << f.num_vars << ' ' << f.m() << '\n';
  for (const auto& c : f.clauses) {
    for (const auto& l : c) os << l.dimacs() << ' ';
    os << "0\n";
  }
  if (with_embedding && f.embedding)
    for (const auto& row : *f.embedding) {
      os << "c embed " << row.vertex;
      for (const auto& n : row.neighbors) os << ' ' << n;
      os << '\n';
    }
  return os.str();
}

// ---------------------------------------------------------------------------
// Occurrences and normalization

struct OccurrenceProfile {
  std::vector<int> positive;  // positive[i-1] for x_i
  std::vector<int> negative;

  int total(int var) const { return positive[var - 1] + negative[var - 1]; }
};

inline OccurrenceProfile occurrence_profile(const CnfInstance& f) {
  OccurrenceProfile p{std::vector<int>(f.num_vars, 0), std::vector<int>(f.num_vars, 0)};
  for (const auto& c : f.clauses)
    for (const auto& l : c) ++(l.positive ? p.positive : p.negative)[l.var - 1];
  return p;
}

/// Variables that occur in at least one clause, ascending.
inline std::vector<int> occurring_variables(const CnfInstance& f) {
  auto p = occurrence_profile(f);
  std::vector<int> out;
  for (int i = 1; i <= f.num_vars; ++i)
    if (p.total(i) > 0) out.push_back(i);
  return out;
}

struct Normalized {
  CnfInstance formula;
  std::vector<std::optional<bool>> fixed;  // fixed[i-1]: value forced on x_i
  bool changed = false;
};

/// Throws kOccurrence unless every occurring variable has at most three
/// occurrences with both polarities present.
inline void check_strict_occurrences(const CnfInstance& f) {
  auto p = occurrence_profile(f);
  for (int i = 1; i <= f.num_vars; ++i) {
    int pos = p.positive[i - 1], neg = p.negative[i - 1];
    if (pos + neg == 0) continue;
    if (pos + neg > 3 || pos == 0 || neg == 0)
      throw Error(ErrorCode::kOccurrence, "variable x" + std::to_string(i) + " occurs " +
                                              std::to_string(pos + neg) + " times (" + std::to_string(pos) +
                                              " positive, " + std::to_string(neg) + " negative)");
  }
}

/// Pure-literal elimination to a fixpoint. A supplied embedding survives only
/// if no clause was removed.
inline Normalized normalize(const CnfInstance& f, bool strict = false) {
  Normalized out{f, std::vector<std::optional<bool>>(f.num_vars), false};
  auto& g = out.formula;
  for (;;) {
    auto p = occurrence_profile(g);
    std::vector<char> pure(g.num_vars + 1, 0);
    bool any = false;
    for (int i = 1; i <= g.num_vars; ++i) {
      if (p.positive[i - 1] > 0 && p.negative[i - 1] == 0) {
        out.fixed[i - 1] = true;
        pure[i] = any = true;
      } else if (p.negative[i - 1] > 0 && p.positive[i - 1] == 0) {
        out.fixed[i - 1] = false;
        pure[i] = any = true;
      }
    }
    if (!any) break;
    std::erase_if(g.clauses, [&](const Clause& c) {
      return std::any_of(c.begin(), c.end(), [&](const Literal& l) { return pure[l.var]; });
    });
    out.changed = true;
  }
  if (out.changed) g.embedding.reset();
  if (strict) check_strict_occurrences(g);
  return out;
}

// ---------------------------------------------------------------------------
// Augmented incidence graph and its embedding

enum class Side { kUpper, kLower };

inline const char* side_name(Side s) { return s == Side::kUpper ? "UPPER" : "LOWER"; }

/// Variable-clause incidence graph plus the clause cycle. Vertex x_i has id
/// i-1, clause c_j has id n+j-1.
struct AugmentedGraph {
  Graph graph;
  int n = 0;
  int m = 0;

  Vertex var_vertex(int i) const { return i - 1; }
  Vertex clause_vertex(int j) const { return n + j - 1; }
  bool is_clause(Vertex v) const { return v >= n; }
  int index_of(Vertex v) const { return is_clause(v) ? v - n + 1 : v + 1; }
  std::string name(Vertex v) const { return (is_clause(v) ? "c" : "x") + std::to_string(index_of(v)); }

  std::optional<Vertex> parse_name(std::string_view s) const {
    if (s.size() < 2 || (s[0] != 'x' && s[0] != 'c')) return std::nullopt;
    auto k = detail::to_long(s.substr(1));
    if (!k || *k < 1) return std::nullopt;
    if (s[0] == 'x') return *k <= n ? std::optional<Vertex>(var_vertex(static_cast<int>(*k))) : std::nullopt;
    return *k <= m ? std::optional<Vertex>(clause_vertex(static_cast<int>(*k))) : std::nullopt;
  }
};

/// m=1 adds no cycle edge and m=2 adds the single edge c1c2.
inline AugmentedGraph augmented_graph(const CnfInstance& f) {
  AugmentedGraph a{Graph(static_cast<std::size_t>(f.num_vars + f.m())), f.num_vars, f.m()};
  for (int j = 1; j <= f.m(); ++j)
    for (const auto& l : f.clauses[j - 1]) a.graph.add_edge(a.var_vertex(l.var), a.clause_vertex(j));
  if (f.m() >= 2)
    for (int j = 1; j <= f.m(); ++j) {
      int k = j % f.m() + 1;
      if (j != k) a.graph.add_edge(a.clause_vertex(j), a.clause_vertex(k));
    }
  return a;
}

/// Literal slots of one clause on each side of the clause cycle, each list
/// in left-to-right order along the gadget row.
struct ClauseSides {
  std::vector<int> upper;
  std::vector<int> lower;
};

struct SideAssignment {
  std::vector<Side> side;            // side[i-1] for x_i; unused variables UPPER
  std::vector<ClauseSides> clauses;  // clauses[j-1]
};

struct PlanarEmbedding {
  AugmentedGraph aug;
  RotationSystem rotation;  // counterclockwise
  SideAssignment sides;
  bool supplied = false;
};

/// Reads sides off the rotation at each clause vertex. The clause cycle is
/// walked c_1 -> c_2 -> ...; UPPER is its left. For m <= 2 there is no real
/// cycle and every variable is UPPER (see README).
inline SideAssignment classify_variable_sides(const CnfInstance& f, const AugmentedGraph& aug,
                                              const RotationSystem& rot) {
  SideAssignment out;
  out.side.assign(f.num_vars, Side::kUpper);
  std::vector<std::optional<Side>> seen(f.num_vars);
  const int m = f.m();
  for (int j = 1; j <= m; ++j) {
    const auto& r = rot[aug.clause_vertex(j)];
    const auto& clause = f.clauses[j - 1];
    auto slot_of = [&](Vertex v) {
      for (int a = 0; a < static_cast<int>(clause.size()); ++a)
        if (aug.var_vertex(clause[a].var) == v) return a;
      throw Error(ErrorCode::kInternal, "rotation entry is not a literal of the clause");
    };
    std::vector<int> upper_ccw, lower_ccw;
    const std::size_t d = r.size();
    if (m >= 3) {
      Vertex next = aug.clause_vertex(j % m + 1);
      Vertex prev = aug.clause_vertex((j + m - 2) % m + 1);
      std::size_t pn = detail::position_in(r, next), pp = detail::position_in(r, prev);
      for (std::size_t k = (pn + 1) % d; k != pp; k = (k + 1) % d) upper_ccw.push_back(slot_of(r[k]));
      for (std::size_t k = (pp + 1) % d; k != pn; k = (k + 1) % d) lower_ccw.push_back(slot_of(r[k]));
    } else {
      std::size_t start = 0;
      if (m == 2) start = (detail::position_in(r, aug.clause_vertex(3 - j)) + 1) % d;
      for (std::size_t t = 0; t < d; ++t) {
        Vertex v = r[(start + t) % d];
        if (!aug.is_clause(v)) upper_ccw.push_back(slot_of(v));
      }
    }
    ClauseSides cs;
    cs.upper.assign(upper_ccw.rbegin(), upper_ccw.rend());
    cs.lower = lower_ccw;
    for (auto [list, s] : {std::pair{&cs.upper, Side::kUpper}, std::pair{&cs.lower, Side::kLower}})
      for (int a : *list) {
        int var = clause[a].var;
        if (seen[var - 1] && *seen[var - 1] != s)
          throw Error(ErrorCode::kEmbedding, "variable x" + std::to_string(var) + " lies on both sides of the clause cycle");
        seen[var - 1] = s;
        out.side[var - 1] = s;
      }
    out.clauses.push_back(std::move(cs));
  }
  return out;
}

/// Non-planar augmented graph; certificate edges use vertex names.
class PlanarityError : public Error {
 public:
  PlanarityError(const std::string& what, std::vector<std::pair<std::string, std::string>> cert)
      : Error(ErrorCode::kPlanarity, what), certificate_(std::move(cert)) {}
  const std::vector<std::pair<std::string, std::string>>& certificate() const noexcept { return certificate_; }

 private:
  std::vector<std::pair<std::string, std::string>> certificate_;
};

inline RotationSystem rotation_from_rows(const AugmentedGraph& aug, const std::vector<EmbeddingRow>& rows) {
  RotationSystem rot(aug.graph.order());
  std::vector<char> given(aug.graph.order(), 0);
  for (const auto& row : rows) {
    auto v = aug.parse_name(row.vertex);
    if (!v) throw ParseError("MalformedEmbedding", row.line, "unknown vertex '" + row.vertex + "'");
    if (given[*v]) throw ParseError("MalformedEmbedding", row.line, "vertex '" + row.vertex + "' listed twice");
    given[*v] = 1;
    for (const auto& name : row.neighbors) {
      auto u = aug.parse_name(name);
      if (!u) throw ParseError("MalformedEmbedding", row.line, "unknown vertex '" + name + "'");
      rot[*v].push_back(*u);
    }
    auto sorted = rot[*v];
    std::sort(sorted.begin(), sorted.end());
    auto nb = aug.graph.neighbors(*v);
    if (!std::equal(sorted.begin(), sorted.end(), nb.begin(), nb.end()))
      throw ParseError("MalformedEmbedding", row.line, "rotation of '" + row.vertex + "' is not a permutation of its neighbors");
  }
  for (Vertex v = 0; v < static_cast<Vertex>(aug.graph.order()); ++v)
    if (!given[v] && aug.graph.degree(v) > 0)
      throw ParseError("MalformedEmbedding", rows.empty() ? 0 : rows.back().line, "no rotation for '" + aug.name(v) + "'");
  return rot;
}

inline std::vector<EmbeddingRow> rows_from_rotation(const AugmentedGraph& aug, const RotationSystem& rot) {
  std::vector<EmbeddingRow> rows;
  for (Vertex v = 0; v < static_cast<Vertex>(rot.size()); ++v) {
    if (rot[v].empty()) continue;
    EmbeddingRow row{aug.name(v), {}, 0};
    for (Vertex u : rot[v]) row.neighbors.push_back(aug.name(u));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Certifies that the incidence graph plus clause cycle is planar. A supplied
/// embedding is validated (Euler) and used as is; otherwise Boyer–Myrvold
/// computes one.
inline PlanarEmbedding check_clause_linked_planarity(const CnfInstance& f) {
  if (f.m() < 1) throw Error(ErrorCode::kPrecondition, "planarity check needs at least one clause");
  PlanarEmbedding e;
  e.aug = augmented_graph(f);
  if (f.embedding) {
    e.rotation = rotation_from_rows(e.aug, *f.embedding);
    if (!satisfies_euler(e.aug.graph, e.rotation))
      throw Error(ErrorCode::kEmbedding, "supplied rotation system is not a planar embedding (Euler check failed)");
    e.supplied = true;
  } else {
    auto r = test_planarity(e.aug.graph);
    if (!r.planar) {
      std::vector<std::pair<std::string, std::string>> cert;
      std::string msg = "augmented incidence graph is not planar; Kuratowski subgraph:";
      for (auto [u, v] : r.kuratowski) {
        cert.emplace_back(e.aug.name(u), e.aug.name(v));
        msg += " " + e.aug.name(u) + "-" + e.aug.name(v);
      }
      throw PlanarityError(msg, std::move(cert));
    }
    e.rotation = std::move(r.rotation);
    if (!satisfies_euler(e.aug.graph, e.rotation))
      throw Error(ErrorCode::kInternal, "planarity test returned an invalid embedding");
  }
  e.sides = classify_variable_sides(f, e.aug, e.rotation);
  return e;
}

}  // namespace i2dp
