// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "i2dp/pipeline.hpp"
#include "oracles/naive_paths.hpp"
#include "oracles/small_graphs.hpp"

using namespace i2dp;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Case {
  std::string name;
  bool from_corpus_dir = false;
  CnfInstance original;
  Normalized norm;
  std::optional<PlanarEmbedding> embedding;
  std::optional<ReductionInstance> reduction;
  std::optional<Assignment> model;         // of the original formula
  std::optional<PathWitness> witness;      // solver, on the reduction
  double solve_seconds = 0;
};

std::vector<Case> load_cases() {
  std::vector<Case> out;
  auto add = [&](const NamedInstance& ni, bool dir) {
    Case c;
    c.name = ni.name;
    c.from_corpus_dir = dir;
    c.original = ni.formula;
    c.norm = normalize(ni.formula);
    c.model = brute_force_sat(ni.formula);
    const auto& g = c.norm.formula;
    if (g.m() > 0) {
      c.embedding = check_clause_linked_planarity(g);
      c.reduction = assemble_reduction(g, c.embedding->sides);
      auto t0 = Clock::now();
      c.witness = solve_i2dp(c.reduction->graph.graph(), c.reduction->terminals);
      c.solve_seconds = since(t0);
    }
    out.push_back(std::move(c));
  };
  for (const auto& ni : load_corpus_dir(I2DP_CORPUS_DIR)) add(ni, true);
  for (const auto& ni : exhaustive_family()) add(ni, false);
  return out;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// --- 1 -----------------------------------------------------------------------
Outcome equivalence(const std::vector<Case>& cases, double load_seconds) {
  Outcome o;
  int sat = 0, unsat = 0, named = 0;
  double worst = 0;
  for (const auto& c : cases) {
    named += c.from_corpus_dir;
    bool paths = c.reduction ? c.witness.has_value() : true;  // no clauses: trivially linked
    if (c.model.has_value() != paths) {
      o.pass = false;
      o.detail += c.name + " disagrees; ";
    }
    (c.model ? sat : unsat)++;
    worst = std::max(worst, c.solve_seconds);
  }
  bool has_f2 = false, has_f3 = false;
  for (const auto& c : cases) {
    has_f2 |= c.name == "f2";
    has_f3 |= c.name == "f3";
  }
  if (!has_f2 || !has_f3 || named < 8) {
    o.pass = false;
    o.detail += "corpus is missing F2/F3 or hand-built instances; ";
  }
  if (worst > 60 || load_seconds > 600) o.pass = false;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu instances (%d corpus files), %d SAT, %d UNSAT, slowest solve %.3fs, suite %.1fs",
                cases.size(), named, sat, unsat, worst, load_seconds);
  o.detail += buf;
  return o;
}

// --- 2 -----------------------------------------------------------------------
Outcome round_trip(const std::vector<Case>& cases) {
  Outcome o;
  int checked = 0;
  for (const auto& c : cases) {
    if (!c.model || !c.reduction) continue;
    const auto& r = *c.reduction;
    const auto& g = c.norm.formula;
    auto gm = brute_force_sat(g);
    auto w = witness_from_assignment(r, *gm);
    bool ok = is_mutually_induced(r.graph.graph(), w.paths).ok() && w.paths[0].front() == r.terminals.s1 &&
              w.paths[0].back() == r.terminals.t1 && w.paths[1].front() == r.terminals.s2 &&
              w.paths[1].back() == r.terminals.t2;
    if (c.witness) {
      auto a = assignment_from_witness(r, *c.witness);
      // lift to the original formula with the values normalization fixed
      for (int i = 1; i <= c.original.num_vars; ++i)
        if (c.norm.fixed[i - 1]) a.values.at(i - 1) = *c.norm.fixed[i - 1];
      ok &= satisfies(g, a) && satisfies(c.original, a);
    } else {
      ok = false;
    }
    if (!ok) {
      o.pass = false;
      o.detail += c.name + " fails; ";
    }
    ++checked;
  }
  o.detail += std::to_string(checked) + " satisfiable instances";
  return o;
}

// --- 3 -----------------------------------------------------------------------
Outcome flow_equals_linkage(const std::vector<Case>& cases) {
  Outcome o;
  int checked = 0;
  for (const auto& c : cases) {
    if (!c.reduction) continue;
    const auto& r = *c.reduction;
    const auto& G = r.graph.graph();
    const auto& t = r.terminals;
    auto flow = solve_induced_st_flow(G, {t.s1, t.s2}, {t.t1, t.t2});
    auto crossed = solve_i2dp(G, {t.s1, t.t2, t.s2, t.t1});
    if (flow.has_value() != c.witness.has_value() || crossed || (flow && !flow->straight)) {
      o.pass = false;
      o.detail += c.name + " fails; ";
    }
    ++checked;
  }
  o.detail += std::to_string(checked) + " reductions, no crossed linkage";
  return o;
}

// --- 4 -----------------------------------------------------------------------
Outcome strings(const std::vector<Case>& cases) {
  Outcome o;
  int checked = 0;
  std::size_t curves = 0;
  for (const auto& c : cases) {
    if (!c.reduction || c.norm.formula.m() > 4) continue;
    try {
      auto s = build_string_representation(*c.reduction);
      auto chk = verify_realization(*c.reduction, s);
      if (!chk.ok || chk.touches) {
        o.pass = false;
        o.detail += c.name + " mismatch; ";
      }
      curves += s.size();
    } catch (const Error& e) {
      o.pass = false;
      o.detail += c.name + ": " + e.what() + "; ";
    }
    ++checked;
  }
  o.detail += std::to_string(checked) + " instances with m <= 4, " + std::to_string(curves) + " curves, exact";
  return o;
}

// --- 5 -----------------------------------------------------------------------

// Built here rather than taken from the library.
Graph k33_subdivided(bool one_double) {
  Graph g(6);
  for (int a = 0; a < 3; ++a)
    for (int b = 3; b < 6; ++b) {
      Vertex x = static_cast<Vertex>(g.order());
      g.add_vertex();
      g.add_edge(a, x);
      if (one_double && a == 0 && b == 3) {
        g.add_vertex();
        g.add_edge(x, x + 1);
        g.add_edge(x + 1, b);
      } else {
        g.add_edge(x, b);
      }
    }
  return g;
}

Outcome pattern_structure() {
  Outcome o;
  auto fail = [&](const std::string& why) {
    o.pass = false;
    o.detail += why + "; ";
  };
  auto t0 = Clock::now();
  auto h = build_H();
  const auto& H = h.graph.graph();
  if (H.order() != 66) fail("|V(H)| = " + std::to_string(H.order()));
  if (H.max_degree() > 3) fail("H not subcubic");
  auto plain = k33_subdivided(false), dbl = k33_subdivided(true);
  for (int k = 0; k < 4; ++k) {
    std::vector<Vertex> part(h.parts[k].begin(), h.parts[k].end());
    if (!are_isomorphic(induced_subgraph(H, part), k < 2 ? plain : dbl)) fail("H[A" + std::to_string(k + 1) + "] shape");
  }
  double th = since(t0);

  t0 = Clock::now();
  auto hp = build_Hprime();
  const auto& P = hp.graph.graph();
  if (P.order() != 74) fail("|V(H')| = " + std::to_string(P.order()));
  for (auto [a, b] : P.edges()) {
    if (P.degree(a) != 2 && P.degree(b) != 2) fail("H' edge without a degree-2 end");
    if (P.degree(a) == 3 && P.degree(b) == 3) fail("H' has adjacent degree-3 vertices");
  }
  double thp = since(t0);
  if (th >= 1 || thp >= 1) fail("too slow");
  char buf[120];
  std::snprintf(buf, sizeof buf, "|V(H)|=%zu |V(H')|=%zu, %.3fs / %.3fs", H.order(), P.order(), th, thp);
  o.detail += buf;
  return o;
}

// --- 6 -----------------------------------------------------------------------
Outcome composition(const std::vector<Case>& cases) {
  Outcome o;
  int premises = 0, models = 0;
  auto H = build_H(), Hp = build_Hprime();
  for (const auto& c : cases) {
    if (!c.reduction) continue;
    for (const auto* pat : {&H, &Hp}) {
      auto comp = compose(*pat, *c.reduction);
      auto c5 = check_cut_premises(comp);
      if (!c5.ok()) {
        o.pass = false;
        o.detail += c.name + " premises; ";
      }
      ++premises;
      if (!c.witness) continue;
      bool ok;
      if (pat == &H)
        ok = check_subdivision_model(comp.graph.graph(), H.graph.graph(), subdivision_model_from_paths(comp, *c.witness)).ok;
      else
        ok = check_minor_model(comp.graph.graph(), Hp.graph.graph(), minor_model_from_paths(comp, *c.witness)).ok;
      if (!ok) {
        o.pass = false;
        o.detail += c.name + " model; ";
      }
      ++models;
    }
  }
  o.detail += std::to_string(premises) + " composed graphs, " + std::to_string(models) + " models checked";
  return o;
}

// --- 7 -----------------------------------------------------------------------
Outcome power(const std::vector<Case>& cases) {
  Outcome o;
  int checked = 0, worst = 0;
  for (const auto& c : cases) {
    if (!c.reduction) continue;
    auto w = build_power_witness(*c.reduction, *c.embedding);
    auto pl = test_planarity(w.host);
    auto a = verify_power_containment(c.reduction->graph.graph(), w);
    bool ok = w.host.max_degree() <= 3 && pl.planar && satisfies_euler(w.host, pl.rotation) &&
              satisfies_euler(w.host, w.host_embedding) && a.ok && a.max_stretch <= 16;
    if (!ok) {
      o.pass = false;
      o.detail += c.name + " fails; ";
    }
    worst = std::max(worst, a.max_stretch);
    ++checked;
  }
  o.detail += std::to_string(checked) + " hosts, worst radius " + std::to_string(worst) + " (limit 16)";
  return o;
}

// --- 8 -----------------------------------------------------------------------
Outcome size_formula(const std::vector<Case>& cases) {
  Outcome o;
  int checked = 0;
  for (const auto& c : cases) {
    if (!c.reduction) continue;
    try {
      normalize(c.original, true);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kOccurrence) continue;
      throw;
    }
    const auto& g = c.norm.formula;
    std::size_t m = g.m(), want = 2 * (m + 1);
    std::vector<int> occ(g.num_vars + 1, 0);
    for (const auto& cl : g.clauses) {
      want += 4 * cl.size();
      for (const auto& l : cl) ++occ[l.var];
    }
    std::size_t n = 0;
    for (int i = 1; i <= g.num_vars; ++i) {
      want += 2 * occ[i];
      n += occ[i] > 0;
    }
    std::size_t got = c.reduction->graph.order();
    if (got != want || got > 14 * m + 6 * n + 2) {
      o.pass = false;
      o.detail += c.name + " has " + std::to_string(got) + "; ";
    }
    ++checked;
  }
  if (checked == 0) o.pass = false;
  o.detail += std::to_string(checked) + " strict instances";
  return o;
}

// --- 9 -----------------------------------------------------------------------
Outcome oracles() {
  Outcome o;
  auto fail = [&](const std::string& why) {
    if (o.pass) o.detail += why + "; ";
    o.pass = false;
  };
  auto agree = [&](const Graph& g, Terminals t) {
    bool want = oracle::has_linkage(g, t.s1, t.t1, t.s2, t.t2);
    auto w = solve_i2dp(g, t);
    if (w.has_value() != want) return false;
    return !w || is_mutually_induced(g, w->paths).ok();
  };

  // exhaustive: every graph on <= 7 vertices, every terminal choice with
  // {s1,t1} and {s2,t2} disjoint (s = t allowed)
  std::size_t exhaustive = 0;
  std::vector<std::vector<Graph>> by_order(8);
  for (int n = 1; n <= 7; ++n) by_order[n] = oracle::all_graphs(n);
  for (int n = 2; n <= 7; ++n)
    for (const auto& g : by_order[n])
      for (Vertex s1 = 0; s1 < n; ++s1)
        for (Vertex t1 = 0; t1 < n; ++t1)
          for (Vertex s2 = 0; s2 < n; ++s2)
            for (Vertex t2 = 0; t2 < n; ++t2) {
              if (s2 == s1 || s2 == t1 || t2 == s1 || t2 == t1) continue;
              ++exhaustive;
              if (!agree(g, {s1, t1, s2, t2})) fail("exhaustive n=" + std::to_string(n));
            }

  // random labelled graphs on 4..10 vertices
  std::mt19937_64 rng(20261018);
  const int kRandom = 20000;
  for (int it = 0; it < kRandom; ++it) {
    int n = 4 + static_cast<int>(rng() % 7);
    Graph g(n);
    double p = std::uniform_real_distribution<double>(0.15, 0.6)(rng);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (std::bernoulli_distribution(p)(rng)) g.add_edge(u, v);
    std::vector<Vertex> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    if (!agree(g, {ids[0], ids[1], ids[2], ids[3]})) fail("random case " + std::to_string(it));
  }

  // containment finders against the closure oracle
  oracle::ContainmentOracle orc;
  std::vector<Graph> patterns;
  for (int k = 1; k <= 4; ++k)
    for (auto& g : oracle::all_graphs(k)) patterns.push_back(g);
  std::size_t pairs = 0;
  for (int n = 1; n <= 7; ++n)
    for (const auto& G : by_order[n])
      for (const auto& H : patterns) {
        ++pairs;
        auto s = find_subdivision_model(G, H);
        auto m = find_minor_model(G, H);
        if (s.has_value() != orc.induced_subdivision(G, H)) fail("subdivision finder");
        if (m.has_value() != orc.induced_minor(G, H)) fail("minor finder");
        if (s && !check_subdivision_model(G, H, *s).ok) fail("invalid subdivision model");
        if (m && !check_minor_model(G, H, *m).ok) fail("invalid minor model");
      }
  o.detail += std::to_string(exhaustive) + " exhaustive + " + std::to_string(kRandom) + " random linkage cases, " +
              std::to_string(pairs) + " host/pattern pairs";
  return o;
}

}  // namespace

int main() {
  auto t0 = Clock::now();
  std::vector<Case> cases;
  try {
    cases = load_cases();
  } catch (const Error& e) {
    std::printf("FAIL loading instances: %s\n", e.what());
    return 1;
  }
  double load = since(t0);

  struct Row {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Row> rows = {
      {1, "equivalence", [&] { return equivalence(cases, load); }},
      {2, "witness round-trip", [&] { return round_trip(cases); }},
      {3, "flow = linkage", [&] { return flow_equals_linkage(cases); }},
      {4, "string realization", [&] { return strings(cases); }},
      {5, "pattern structure", [] { return pattern_structure(); }},
      {6, "composition", [&] { return composition(cases); }},
      {7, "power host", [&] { return power(cases); }},
      {8, "size formula", [&] { return size_formula(cases); }},
      {9, "oracle cross-validation", [] { return oracles(); }},
  };
  bool all = true;
  for (const auto& r : rows) {
    auto t = Clock::now();
    Outcome o;
    try {
      o = r.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all &= o.pass;
    std::printf("criterion %d %s  %-24s %s [%.1fs]\n", r.id, o.pass ? "PASS" : "FAIL", r.name, o.detail.c_str(), since(t));
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
