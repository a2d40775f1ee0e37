#include <gtest/gtest.h>

#include "i2dp/patterns.hpp"
#include "oracles/small_graphs.hpp"

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
}  // namespace

TEST(Pattern, HCounts) {
  auto h = build_H();
  EXPECT_EQ(h.graph.order(), 66u);
  EXPECT_EQ(h.parts[0].size(), 15u);
  EXPECT_EQ(h.parts[2].size(), 16u);
  EXPECT_TRUE(pattern_violations(h).empty()) << pattern_violations(h).front();
  EXPECT_EQ(h.graph.label(h.attach[0]), "w133");
  EXPECT_EQ(h.graph.label(h.attach[3]), "w411");
  EXPECT_TRUE(h.graph.graph().has_edge(h.graph.at("w311"), h.graph.at("w311b")));
}

TEST(Pattern, HprimeDegrees) {
  auto hp = build_Hprime();
  EXPECT_EQ(hp.graph.order(), 74u);
  auto bad = pattern_violations(hp);
  EXPECT_TRUE(bad.empty()) << bad.front();
  // H has adjacent degree-3 vertices (attachment and its branch vertices)
  auto h = build_H();
  const auto& g = h.graph.graph();
  EXPECT_EQ(g.degree(h.attach[0]), 3);
  EXPECT_EQ(g.degree(h.graph.at("u13")), 3);
  EXPECT_TRUE(g.has_edge(h.attach[0], h.graph.at("u13")));
}

TEST(Pattern, CanonicalShapes) {
  EXPECT_EQ(one_subdivided_k33().order(), 15u);
  EXPECT_EQ(k33_one_double().order(), 16u);
  EXPECT_FALSE(are_isomorphic(k33_one_double(), subdivide(complete_bipartite(3, 3), 1)));
  auto rep = structural_predicates(one_subdivided_k33());
  EXPECT_TRUE(rep.cutvertices.empty());
  EXPECT_TRUE(rep.bridges.empty());
}

TEST(Compose, F2) {
  auto r = reduce(cnf(2, {{1, 2}, {-1, -2}}));
  auto c = compose(build_H(), r);
  EXPECT_EQ(c.graph.order(), 92u);
  auto rep = check_cut_premises(c);
  EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front());
  auto cp = compose(build_Hprime(), r);
  EXPECT_EQ(cp.graph.order(), 100u);
  EXPECT_TRUE(check_cut_premises(cp).ok());
}

TEST(Compose, ForwardModels) {
  auto r = reduce(cnf(2, {{1, 2}, {-1, -2}}));
  auto w = solve_i2dp(r.graph.graph(), r.terminals);
  ASSERT_TRUE(w);
  auto c = compose(build_H(), r);
  auto sm = subdivision_model_from_paths(c, *w);
  auto chk = check_subdivision_model(c.graph.graph(), c.pattern.graph.graph(), sm);
  EXPECT_TRUE(chk.ok) << chk.violation;

  auto cp = compose(build_Hprime(), r);
  auto mm = minor_model_from_paths(cp, *w);
  auto mchk = check_minor_model(cp.graph.graph(), cp.pattern.graph.graph(), mm);
  EXPECT_TRUE(mchk.ok) << mchk.violation;
  EXPECT_TRUE(is_minimal_minor_model(cp.graph.graph(), cp.pattern.graph.graph(), mm));
}

TEST(Compose, ChordedWitnessRejected) {
  auto r = reduce(cnf(2, {{1, 2}, {-1, -2}}));
  auto w = solve_i2dp(r.graph.graph(), r.terminals);
  ASSERT_TRUE(w);
  auto c = compose(build_H(), r);
  // add a chord between the two paths
  c.graph.add_edge(w->paths[0][1], w->paths[1][1]);
  EXPECT_THROW(subdivision_model_from_paths(c, *w), Error);
}

TEST(Models, IdentityAndChord) {
  auto H = build_H().graph.graph();
  SubdivisionModel id;
  for (Vertex v = 0; v < static_cast<Vertex>(H.order()); ++v) id.phi.push_back(v);
  for (auto [a, b] : H.edges()) id.paths.push_back({a, b});
  EXPECT_TRUE(check_subdivision_model(H, H, id).ok);

  // P3 in C4 via the long way round leaves a chord
  Graph c4 = cycle_graph(4);
  Graph p3 = path_graph(3);
  SubdivisionModel m{{0, 1, 3}, {{0, 1}, {1, 2, 3}}};
  auto chk = check_subdivision_model(c4, p3, m);
  EXPECT_FALSE(chk.ok);
  EXPECT_NE(chk.violation.find("not on any path"), std::string::npos);
  SubdivisionModel dangling{{0, 1, 9}, {{0, 1}, {1, 9}}};
  EXPECT_THROW(check_subdivision_model(c4, p3, dangling), Error);
}

TEST(Models, MinorBasics) {
  Graph p5 = path_graph(5), p4 = path_graph(4);
  MinorModel contract{{{0}, {1, 2}, {3}, {4}}};
  EXPECT_TRUE(check_minor_model(p5, p4, contract).ok);
  MinorModel split{{{0}, {1, 3}, {2}, {4}}};
  EXPECT_FALSE(check_minor_model(p5, p4, split).ok);
  MinorModel singles{{{0}, {1}, {2}, {3}}};
  EXPECT_TRUE(is_minimal_minor_model(p5, p4, singles));
  // pendant padding: P3 into a star-ish host
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  Graph p3 = path_graph(3);
  MinorModel padded{{{0}, {1, 3}, {2}}};
  ASSERT_TRUE(check_minor_model(g, p3, padded).ok);
  EXPECT_FALSE(is_minimal_minor_model(g, p3, padded));
  EXPECT_FALSE(is_minimal_minor_model_exhaustive(g, p3, padded));
  auto shrunk = minimize_minor_model(g, p3, padded);
  EXPECT_TRUE(is_minimal_minor_model(g, p3, shrunk));
  EXPECT_TRUE(is_minimal_minor_model_exhaustive(g, p3, shrunk));
}

TEST(Finders, Examples) {
  EXPECT_TRUE(find_subdivision_model(path_graph(5), path_graph(3)));
  EXPECT_FALSE(find_minor_model(path_graph(4), complete_graph(3)));
  EXPECT_TRUE(find_minor_model(cycle_graph(4), complete_graph(3)));
  EXPECT_TRUE(find_subdivision_model(cycle_graph(4), complete_graph(3)));
  EXPECT_THROW(find_minor_model(path_graph(13), path_graph(2)), Error);
  FindOptions big;
  big.override_guard = true;
  EXPECT_TRUE(find_minor_model(path_graph(13), path_graph(2), big));
}

// Finders against the reachability oracle on every host with <= 6 vertices
// (the 7-vertex sweep runs in the acceptance binary).
TEST(Finders, AgreeWithOracleSmall) {
  oracle::ContainmentOracle orc;
  std::vector<Graph> patterns;
  for (int k = 1; k <= 4; ++k)
    for (auto& g : oracle::all_graphs(k)) patterns.push_back(g);
  EXPECT_EQ(patterns.size(), 1u + 2u + 4u + 11u);
  std::size_t yes_sub = 0, yes_min = 0;
  for (int n = 1; n <= 6; ++n)
    for (const auto& G : oracle::all_graphs(n))
      for (const auto& H : patterns) {
        bool s = find_subdivision_model(G, H).has_value();
        bool m = find_minor_model(G, H).has_value();
        ASSERT_EQ(s, orc.induced_subdivision(G, H));
        ASSERT_EQ(m, orc.induced_minor(G, H));
        yes_sub += s;
        yes_min += m;
      }
  EXPECT_GT(yes_min, yes_sub);
}

TEST(Oracle, GraphCounts) {
  // OEIS A000088
  const std::size_t want[] = {1, 1, 2, 4, 11, 34, 156};
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(oracle::all_graphs(n).size(), want[n]);
}
