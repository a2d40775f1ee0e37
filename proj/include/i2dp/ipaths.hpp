#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "i2dp/errors.hpp"
#include "i2dp/gadgets.hpp"
#include "i2dp/graph.hpp"
#include "i2dp/instance.hpp"

namespace i2dp {

using Path = std::vector<Vertex>;

struct PathWitness {
  std::vector<Path> paths;  // P^N, P^S for reduction outputs
  friend bool operator==(const PathWitness&, const PathWitness&) = default;
};

struct InducedCheck {
  enum class Kind { kOk, kEmpty, kNonEdge, kRepeated, kShared, kChord, kCrossEdge };
  Kind kind = Kind::kOk;
  Vertex a = -1, b = -1;  // offending vertex or vertex pair
  std::string message;

  bool ok() const { return kind == Kind::kOk; }
  explicit operator bool() const { return ok(); }
};

/// True iff the union of `paths` induces exactly their disjoint union.
inline InducedCheck is_mutually_induced(const Graph& g, const std::vector<Path>& paths) {
  using K = InducedCheck::Kind;
  const auto n = static_cast<Vertex>(g.order());
  std::vector<int> owner(g.order(), -1);
  std::vector<int> index(g.order(), -1);
  for (int p = 0; p < static_cast<int>(paths.size()); ++p) {
    if (paths[p].empty()) return {K::kEmpty, -1, -1, "path " + std::to_string(p) + " is empty"};
    for (int k = 0; k < static_cast<int>(paths[p].size()); ++k) {
      Vertex v = paths[p][k];
      if (v < 0 || v >= n) throw Error(ErrorCode::kPrecondition, "path references unknown vertex " + std::to_string(v));
      if (owner[v] == p) return {K::kRepeated, v, -1, "vertex " + std::to_string(v) + " repeated in path " + std::to_string(p)};
      if (owner[v] != -1)
        return {K::kShared, v, -1, "vertex " + std::to_string(v) + " shared by paths " + std::to_string(owner[v]) + " and " + std::to_string(p)};
      owner[v] = p;
      index[v] = k;
      if (k > 0 && !g.has_edge(paths[p][k - 1], v))
        return {K::kNonEdge, paths[p][k - 1], v,
                "consecutive vertices " + std::to_string(paths[p][k - 1]) + ", " + std::to_string(v) + " are not adjacent"};
    }
  }
  for (const auto& path : paths)
    for (Vertex u : path)
      for (Vertex v : g.neighbors(u)) {
        if (v <= u || owner[v] == -1) continue;
        if (owner[v] != owner[u])
          return {K::kCrossEdge, u, v, "edge " + std::to_string(u) + "-" + std::to_string(v) + " joins two paths"};
        if (std::abs(index[u] - index[v]) != 1)
          return {K::kChord, u, v, "chord " + std::to_string(u) + "-" + std::to_string(v) + " inside a path"};
      }
  return {};
}

struct SolveOptions {
  int threads = 1;
};

struct SolveStats {
  std::uint64_t nodes = 0;
};

namespace detail {

/// Depth-first search for the first path s1..t1; the second path is a BFS
/// shortest path in G - N[P1], which is automatically induced.
class LinkageSearch {
 public:
  LinkageSearch(const Graph& g, Vertex s1, Vertex t1, Vertex s2, Vertex t2)
      : g_(g), s1_(s1), t1_(t1), s2_(s2), t2_(t2), cnt_(g.order(), 0), forbid_(g.order(), 0) {
    for (Vertex x : {s2, t2}) {
      forbid_[x] = 1;
      for (Vertex y : g.neighbors(x)) forbid_[y] = 1;
    }
  }

  /// Valid second vertices of P1 (ascending), or {t1} when s1 = t1.
  std::vector<Vertex> first_moves() {
    if (!feasible_endpoints()) return {};
    if (s1_ == t1_) return {t1_};
    std::vector<Vertex> out;
    for (Vertex v : g_.neighbors(s1_))
      if (!forbid_[v]) out.push_back(v);
    return out;
  }

  /// Explores the branch whose second vertex is `first`.
  std::optional<PathWitness> run_branch(Vertex first, const std::atomic<bool>* cancel = nullptr) {
    cancel_ = cancel;
    path_.clear();
    std::fill(cnt_.begin(), cnt_.end(), 0);
    push(s1_);
    if (s1_ == t1_) return complete();
    if (!can_extend(first)) return std::nullopt;
    push(first);
    auto r = dfs();
    return r;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  bool feasible_endpoints() const {
    if (s1_ == s2_ || s1_ == t2_ || t1_ == s2_ || t1_ == t2_) return false;
    if (forbid_[s1_] || forbid_[t1_]) return false;
    return true;
  }

  void push(Vertex v) {
    path_.push_back(v);
    ++cnt_[v];
    for (Vertex u : g_.neighbors(v)) ++cnt_[u];
  }
  void pop() {
    Vertex v = path_.back();
    path_.pop_back();
    --cnt_[v];
    for (Vertex u : g_.neighbors(v)) --cnt_[u];
  }

  // v may follow the current last vertex: adjacent to it only, not near s2/t2
  bool can_extend(Vertex v) const { return !forbid_[v] && cnt_[v] == 1 && g_.has_edge(path_.back(), v); }

  std::optional<PathWitness> complete() const {
    std::vector<char> blocked(g_.order(), 0);
    for (Vertex u = 0; u < static_cast<Vertex>(g_.order()); ++u) blocked[u] = cnt_[u] > 0;
    Path p2 = s2_ == t2_ ? Path{s2_} : bfs_path(g_, s2_, t2_, &blocked);
    if (p2.empty()) return std::nullopt;
    return PathWitness{{path_, std::move(p2)}};
  }

  bool second_pair_connected() const {
    if (s2_ == t2_) return true;
    std::vector<char> blocked(g_.order(), 0);
    for (Vertex u = 0; u < static_cast<Vertex>(g_.order()); ++u) blocked[u] = cnt_[u] > 0;
    blocked[t1_] = 1;
    for (Vertex u : g_.neighbors(t1_)) blocked[u] = 1;
    if (blocked[s2_] || blocked[t2_]) return false;
    return bfs_distances(g_, s2_, &blocked)[t2_] >= 0;
  }

  bool target_reachable() const {
    Vertex last = path_.back();
    // vertices dominated by the path without `last` are off limits
    std::vector<char> blocked(g_.order(), 0);
    for (Vertex u = 0; u < static_cast<Vertex>(g_.order()); ++u) {
      int c = cnt_[u] - (u == last || g_.has_edge(u, last) ? 1 : 0);
      blocked[u] = c > 0 || forbid_[u];
    }
    blocked[last] = 0;
    return bfs_distances(g_, last, &blocked)[t1_] >= 0;
  }

  std::optional<PathWitness> dfs() {
    ++nodes_;
    if (cancel_ && cancel_->load(std::memory_order_relaxed)) return std::nullopt;
    Vertex last = path_.back();
    if (last == t1_) return complete();
    // the target must not see any vertex but the last one
    if (path_.size() >= 2 && g_.has_edge(path_[path_.size() - 2], t1_)) return std::nullopt;
    if (!second_pair_connected() || !target_reachable()) return std::nullopt;
    // only t1 may follow a vertex adjacent to it
    if (g_.has_edge(last, t1_)) {
      if (!can_extend(t1_)) return std::nullopt;
      push(t1_);
      auto r = complete();
      pop();
      return r;
    }
    for (Vertex v : g_.neighbors(last)) {
      if (!can_extend(v)) continue;
      push(v);
      auto r = dfs();
      pop();
      if (r) return r;
    }
    return std::nullopt;
  }

  const Graph& g_;
  Vertex s1_, t1_, s2_, t2_;
  std::vector<int> cnt_;     // |N[v] ∩ P1|
  std::vector<char> forbid_; // N[s2] ∪ N[t2]
  Path path_;
  std::uint64_t nodes_ = 0;
  const std::atomic<bool>* cancel_ = nullptr;
};

}  // namespace detail

/// Exact Induced 2-Disjoint Paths. Returns the first witness in the search
/// order: P1 by DFS over ascending neighbor ids, P2 the least shortest path.
/// With threads > 1 the first-level branches run in parallel and the lowest
/// successful branch wins, so the answer does not depend on thread count.
inline std::optional<PathWitness> solve_i2dp(const Graph& g, const Terminals& t, const SolveOptions& opt = {},
                                             SolveStats* stats = nullptr) {
  for (Vertex v : {t.s1, t.t1, t.s2, t.t2})
    if (v < 0 || v >= static_cast<Vertex>(g.order())) throw Error(ErrorCode::kPrecondition, "terminal out of range");
  detail::LinkageSearch root(g, t.s1, t.t1, t.s2, t.t2);
  auto moves = root.first_moves();
  std::uint64_t nodes = 0;
  std::optional<PathWitness> result;
  if (opt.threads <= 1 || moves.size() <= 1) {
    for (Vertex v : moves) {
      result = root.run_branch(v);
      if (result) break;
    }
    nodes = root.nodes();
  } else {
    std::vector<std::optional<PathWitness>> found(moves.size());
    std::vector<std::atomic<bool>> cancel(moves.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::uint64_t> total{0};
    std::mutex mu;
    std::size_t best = moves.size();
    auto worker = [&] {
      detail::LinkageSearch s(g, t.s1, t.t1, t.s2, t.t2);
      for (;;) {
        std::size_t k = next.fetch_add(1);
        if (k >= moves.size()) break;
        {
          std::lock_guard lock(mu);
          if (k > best) continue;
        }
        auto r = s.run_branch(moves[k], &cancel[k]);
        if (r) {
          std::lock_guard lock(mu);
          found[k] = std::move(r);
          if (k < best) {
            best = k;
            for (std::size_t q = k + 1; q < moves.size(); ++q) cancel[q] = true;
          }
        }
      }
      total += s.nodes();
    };
    std::vector<std::thread> pool;
    int nt = std::min<int>(opt.threads, static_cast<int>(moves.size()));
    for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (best < moves.size()) result = std::move(found[best]);
    nodes = total;
  }
  if (stats) stats->nodes += nodes;
  return result;
}

struct FlowResult {
  PathWitness witness;
  bool straight = true;  // S[0]-T[0] and S[1]-T[1]
};

/// Induced S-T flow with |S| = |T| = 2: tries the pairing S0-T0, S1-T1 and
/// then the crossed one.
inline std::optional<FlowResult> solve_induced_st_flow(const Graph& g, const std::vector<Vertex>& S,
                                                       const std::vector<Vertex>& T, const SolveOptions& opt = {},
                                                       SolveStats* stats = nullptr) {
  if (S.size() != 2 || T.size() != 2) throw Error(ErrorCode::kPrecondition, "flow variant needs |S| = |T| = 2");
  if (S[0] == S[1] || T[0] == T[1]) throw Error(ErrorCode::kPrecondition, "S and T must each hold two distinct vertices");
  for (Vertex s : S)
    for (Vertex t : T)
      if (s == t) throw Error(ErrorCode::kPrecondition, "S and T overlap");
  if (auto w = solve_i2dp(g, {S[0], T[0], S[1], T[1]}, opt, stats)) return FlowResult{std::move(*w), true};
  if (auto w = solve_i2dp(g, {S[0], T[1], S[1], T[0]}, opt, stats)) return FlowResult{std::move(*w), false};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// SAT side

inline constexpr int kMaxBruteForceVars = 30;

/// First satisfying assignment counting upward with x1 as the most
/// significant bit and false < true.
inline std::optional<Assignment> brute_force_sat(const CnfInstance& f) {
  if (f.num_vars > kMaxBruteForceVars)
    throw Error(ErrorCode::kGuard, "brute_force_sat: " + std::to_string(f.num_vars) + " variables exceed the guard of " +
                                       std::to_string(kMaxBruteForceVars));
  const int n = f.num_vars;
  // clause masks over bit (n - var)
  struct Mask {
    std::uint32_t pos = 0, neg = 0;
  };
  std::vector<Mask> masks;
  for (const auto& c : f.clauses) {
    Mask mk;
    for (const auto& l : c) (l.positive ? mk.pos : mk.neg) |= std::uint32_t{1} << (n - l.var);
    masks.push_back(mk);
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < limit; ++bits) {
    auto b = static_cast<std::uint32_t>(bits);
    bool ok = true;
    for (const auto& mk : masks)
      if (!((b & mk.pos) || (~b & mk.neg))) {
        ok = false;
        break;
      }
    if (!ok) continue;
    Assignment a;
    a.values.resize(n);
    for (int i = 1; i <= n; ++i) a.values[i - 1] = (b >> (n - i)) & 1U;
    return a;
  }
  return std::nullopt;
}

/// Route both paths through the first satisfied literal of each
/// clause.
inline PathWitness witness_from_assignment(const ReductionInstance& r, const Assignment& a) {
  if (static_cast<int>(a.values.size()) != r.source.num_vars)
    throw Error(ErrorCode::kPrecondition, "assignment has the wrong number of variables");
  if (auto bad = first_violated_clause(r.source, a))
    throw Error(ErrorCode::kPrecondition, "assignment falsifies clause c" + std::to_string(*bad + 1));
  PathWitness w{{{}, {}}};
  for (int di = 0; di < 2; ++di) {
    Dir d = kDirs[di];
    auto& p = w.paths[di];
    p.push_back(r.v(VertexLabel::entry(1, d)));
    for (int j = 1; j <= r.m(); ++j) {
      const auto& clause = r.source.clauses[j - 1];
      int slot = 1;
      while (!a.satisfies(clause[slot - 1])) ++slot;
      const auto& l = clause[slot - 1];
      p.push_back(r.v(VertexLabel::clause_v(j, slot, west(d))));
      p.push_back(r.v(VertexLabel::var_w(l.var, l.positive, j, d)));
      p.push_back(r.v(VertexLabel::clause_v(j, slot, east(d))));
      p.push_back(r.v(VertexLabel::entry(j + 1, d)));
    }
  }
  return w;
}

/// Walks a witness and checks the read-back invariant: for every clause the two
/// paths use the 4-edge subpaths through the same literal. Returns the chosen
/// slot per clause, or an error message.
struct StructureAudit {
  bool ok = false;
  std::vector<int> slots;  // 1-based literal slot per clause
  std::string message;
};

inline StructureAudit audit_witness_structure(const ReductionInstance& r, const PathWitness& w) {
  StructureAudit out;
  if (w.paths.size() != 2) {
    out.message = "expected two paths";
    return out;
  }
  const int m = r.m();
  for (int di = 0; di < 2; ++di) {
    if (static_cast<int>(w.paths[di].size()) != 4 * m + 1) {
      out.message = std::string("path P^") + dir_name(kDirs[di]) + " has " + std::to_string(w.paths[di].size()) +
                    " vertices, expected " + std::to_string(4 * m + 1);
      return out;
    }
  }
  for (int j = 1; j <= m; ++j) {
    int slot = 0;
    for (int di = 0; di < 2; ++di) {
      Dir d = kDirs[di];
      const auto& p = w.paths[di];
      auto lab = [&](int k) { return r.graph.label(p[4 * (j - 1) + k]); };
      auto fail = [&](const std::string& what) {
        out.message = "clause c" + std::to_string(j) + ", path P^" + dir_name(d) + ": " + what;
        return out;
      };
      if (lab(0) != VertexLabel::entry(j, d)) return fail("does not pass " + VertexLabel::entry(j, d).str());
      auto vw = lab(1);
      if (vw.kind != VertexLabel::Kind::kClauseV || vw.j != j || vw.corner != west(d))
        return fail("leaves the entry point through " + vw.str());
      if (slot == 0) slot = vw.slot;
      if (vw.slot != slot) return fail("uses a different literal than P^N");
      const auto& l = r.source.clauses[j - 1][slot - 1];
      if (lab(2) != VertexLabel::var_w(l.var, l.positive, j, d)) return fail("does not visit the literal's w-vertex");
      if (lab(3) != VertexLabel::clause_v(j, slot, east(d))) return fail("does not return to " + VertexLabel::clause_v(j, slot, east(d)).str());
      if (lab(4) != VertexLabel::entry(j + 1, d)) return fail("does not reach " + VertexLabel::entry(j + 1, d).str());
    }
    out.slots.push_back(slot);
  }
  out.ok = true;
  return out;
}

inline void validate_reduction_witness(const ReductionInstance& r, const PathWitness& w) {
  if (w.paths.size() != 2) throw Error(ErrorCode::kInvalidWitness, "witness must contain two paths");
  const auto& t = r.terminals;
  const auto& pn = w.paths[0];
  const auto& ps = w.paths[1];
  if (pn.empty() || ps.empty() || pn.front() != t.s1 || pn.back() != t.t1 || ps.front() != t.s2 || ps.back() != t.t2)
    throw Error(ErrorCode::kInvalidWitness, "witness paths do not join the terminal pairs");
  auto chk = is_mutually_induced(r.graph.graph(), w.paths);
  if (!chk) throw Error(ErrorCode::kInvalidWitness, "witness is not mutually induced: " + chk.message);
}

/// x_i is false iff P^N visits some w^N_j(-x_i).
inline Assignment assignment_from_witness(const ReductionInstance& r, const PathWitness& w) {
  validate_reduction_witness(r, w);
  Assignment a;
  a.values.assign(r.source.num_vars, true);
  for (Vertex v : w.paths[0]) {
    const auto& l = r.graph.label(v);
    if (l.kind == VertexLabel::Kind::kVarW && !l.positive) a.values[l.var - 1] = false;
  }
  if (auto bad = first_violated_clause(r.source, a))
    throw Error(ErrorCode::kInternal,
                "assignment read from a valid witness falsifies clause c" + std::to_string(*bad + 1));
  return a;
}

}  // namespace i2dp
