#include <gtest/gtest.h>

#include <random>

#include "i2dp/ipaths.hpp"
#include "oracles/naive_paths.hpp"

using namespace i2dp;

namespace {
CnfInstance cnf(int n, std::vector<std::vector<int>> cls) {
  CnfInstance f;
  f.num_vars = n;
  for (auto& c : cls) {
    Clause cl;
    for (int x : c) cl.push_back({x < 0 ? -x : x, x > 0});
    f.clauses.push_back(cl);
  }
  return f;
}
ReductionInstance reduce(const CnfInstance& f) {
  return assemble_reduction(f, check_clause_linked_planarity(f).sides);
}
const CnfInstance kF2 = cnf(2, {{1, 2}, {-1, -2}});
const CnfInstance kF3 = cnf(2, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}});
}  // namespace

TEST(MutuallyInduced, BasicCases) {
  Graph two(2);
  EXPECT_TRUE(is_mutually_induced(two, {{0}, {1}}));
  auto p = path_graph(4);
  auto shared = is_mutually_induced(p, {{0, 1}, {1, 2}});
  EXPECT_EQ(shared.kind, InducedCheck::Kind::kShared);
  EXPECT_EQ(shared.a, 1);
  auto cross = is_mutually_induced(p, {{0, 1}, {2, 3}});
  EXPECT_EQ(cross.kind, InducedCheck::Kind::kCrossEdge);
  auto c = cycle_graph(4);
  EXPECT_EQ(is_mutually_induced(c, {{0, 1, 2, 3}}).kind, InducedCheck::Kind::kChord);
  EXPECT_EQ(is_mutually_induced(p, {{0, 2}}).kind, InducedCheck::Kind::kNonEdge);
  EXPECT_THROW(is_mutually_induced(p, {{9}}), Error);
}

TEST(Solver, TrivialGraphs) {
  Graph two(2);
  auto w = solve_i2dp(two, {0, 0, 1, 1});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->paths, (std::vector<Path>{{0}, {1}}));
  Graph ab(4);
  ab.add_edge(0, 1);
  ab.add_edge(2, 3);
  auto fl = solve_induced_st_flow(ab, {0, 2}, {1, 3});
  ASSERT_TRUE(fl);
  EXPECT_TRUE(fl->straight);
  EXPECT_EQ(fl->witness.paths, (std::vector<Path>{{0, 1}, {2, 3}}));
  EXPECT_THROW(solve_induced_st_flow(ab, {0, 2}, {2, 3}), Error);
  EXPECT_THROW(solve_induced_st_flow(ab, {0}, {2}), Error);
}

TEST(Solver, F2AndF3) {
  auto r2 = reduce(kF2);
  auto w = solve_i2dp(r2.graph.graph(), r2.terminals);
  ASSERT_TRUE(w);
  EXPECT_TRUE(is_mutually_induced(r2.graph.graph(), w->paths));
  EXPECT_TRUE(audit_witness_structure(r2, *w).ok);
  EXPECT_TRUE(satisfies(kF2, assignment_from_witness(r2, *w)));
  auto r3 = reduce(kF3);
  EXPECT_FALSE(solve_i2dp(r3.graph.graph(), r3.terminals));
}

TEST(Solver, ThreadCountDoesNotChangeAnswer) {
  auto f = cnf(5, {{1, 2, 3}, {-1, -2, 4}, {-3, -4, 5}, {1, -5}});
  auto r = reduce(f);
  auto a = solve_i2dp(r.graph.graph(), r.terminals, {1});
  auto b = solve_i2dp(r.graph.graph(), r.terminals, {4});
  ASSERT_TRUE(a);
  EXPECT_EQ(a, b);
}

TEST(Sat, BruteForceOrder) {
  auto a = brute_force_sat(kF2);
  ASSERT_TRUE(a);
  // x1 is the most significant bit: (F,F) fails, (F,T) is the first model
  EXPECT_EQ(a->values, (std::vector<bool>{false, true}));
  EXPECT_FALSE(brute_force_sat(kF3));
  auto e = brute_force_sat(cnf(3, {}));
  ASSERT_TRUE(e);
  EXPECT_EQ(e->values, (std::vector<bool>{false, false, false}));
  CnfInstance big;
  big.num_vars = 31;
  EXPECT_THROW(brute_force_sat(big), Error);
}

TEST(Witness, FromAssignmentF2) {
  auto r = reduce(kF2);
  auto w = witness_from_assignment(r, Assignment{{true, false}});
  ASSERT_EQ(w.paths[0].size(), 9u);
  EXPECT_EQ(r.graph.label(w.paths[0][2]).str(), "w:1:+:1:N");
  EXPECT_EQ(r.graph.label(w.paths[0][6]).str(), "w:2:-:2:N");
  EXPECT_TRUE(is_mutually_induced(r.graph.graph(), w.paths));
  auto back = assignment_from_witness(r, w);
  EXPECT_TRUE(satisfies(kF2, back));
  try {
    witness_from_assignment(r, Assignment{{true, true}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("c2"), std::string::npos);
  }
}

TEST(Witness, ChordInjectedIsRejected) {
  auto r = reduce(kF2);
  auto w = witness_from_assignment(r, Assignment{{true, false}});
  // swap in the w^S of the other literal: joins P^S to P^N's variable gadget
  w.paths[1][2] = r.v(VertexLabel::var_w(2, true, 1, Dir::kS));
  w.paths[1][1] = r.v(VertexLabel::clause_v(1, 2, Corner::kSW));
  w.paths[1][3] = r.v(VertexLabel::clause_v(1, 2, Corner::kSE));
  EXPECT_THROW(assignment_from_witness(r, w), Error);
}

TEST(Flow, CrossPairingHasNoWitness) {
  for (const auto& f : {kF2, cnf(3, {{1, 2, 3}, {-1, -2, -3}})}) {
    auto r = reduce(f);
    const auto& t = r.terminals;
    EXPECT_FALSE(solve_i2dp(r.graph.graph(), {t.s1, t.t2, t.s2, t.t1}));
    auto fl = solve_induced_st_flow(r.graph.graph(), {t.s1, t.s2}, {t.t1, t.t2});
    ASSERT_TRUE(fl);
    EXPECT_TRUE(fl->straight);
  }
}

// Cross-check against the naive enumerator on random small graphs.
TEST(Solver, AgreesWithNaiveOnRandomGraphs) {
  std::mt19937 rng(5);
  int yes = 0;
  for (int it = 0; it < 3000; ++it) {
    int n = 4 + static_cast<int>(rng() % 7);
    Graph g(n);
    double p = 0.2 + 0.4 * (rng() % 100) / 100.0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if ((rng() % 1000) < p * 1000) g.add_edge(u, v);
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    Terminals t{ids[0], ids[1], ids[2], ids[3]};
    if (rng() % 10 == 0) t.t1 = t.s1;
    bool expect = oracle::has_linkage(g, t.s1, t.t1, t.s2, t.t2);
    auto w = solve_i2dp(g, t);
    ASSERT_EQ(w.has_value(), expect) << "iteration " << it;
    if (w) {
      ++yes;
      EXPECT_TRUE(is_mutually_induced(g, w->paths));
      EXPECT_EQ(w->paths[0].front(), t.s1);
      EXPECT_EQ(w->paths[1].back(), t.t2);
    }
  }
  EXPECT_GT(yes, 100);
}
