#include <gtest/gtest.h>

#include "i2dp/graph.hpp"
#include "i2dp/planarity.hpp"
#include "i2dp/rational.hpp"

using namespace i2dp;

TEST(Graph, EdgesAreSortedAndSimple) {
  Graph g(4);
  EXPECT_TRUE(g.add_edge(2, 0));
  EXPECT_FALSE(g.add_edge(0, 2));
  g.add_edge(1, 3);
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 2}, {1, 3}}));
  EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
}

TEST(Graph, BitMatrixSurvivesGrowth) {
  Graph g(63);
  g.add_edge(0, 62);
  g.add_vertex();
  g.add_vertex();
  g.add_edge(64, 1);
  EXPECT_TRUE(g.has_edge(62, 0));
  EXPECT_TRUE(g.has_edge(1, 64));
  EXPECT_FALSE(g.has_edge(1, 63));
}

TEST(Graph, BfsPathPrefersSmallIds) {
  auto g = cycle_graph(4);  // 0-1-2-3-0
  EXPECT_EQ(bfs_path(g, 0, 2), (std::vector<Vertex>{0, 1, 2}));
  std::vector<char> blocked(4, 0);
  blocked[1] = 1;
  EXPECT_EQ(bfs_path(g, 0, 2, &blocked), (std::vector<Vertex>{0, 3, 2}));
}

TEST(Graph, CutStructureOfTwoTriangles) {
  Graph g(5);
  for (auto [a, b] : std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}}) g.add_edge(a, b);
  auto cs = cut_structure(g);
  EXPECT_EQ(cs.cutvertices, std::vector<Vertex>{2});
  EXPECT_TRUE(cs.bridges.empty());
  auto p = path_graph(3);
  EXPECT_EQ(cut_structure(p).bridges.size(), 2u);
}

TEST(Graph, IsomorphismOfRelabeledPetersenLikeGraphs) {
  auto a = subdivide(complete_bipartite(3, 3), 1);
  EXPECT_EQ(a.order(), 15u);
  // reverse labels
  Graph b(a.order());
  int n = static_cast<int>(a.order());
  for (auto [u, v] : a.edges()) b.add_edge(n - 1 - u, n - 1 - v);
  EXPECT_TRUE(are_isomorphic(a, b));
  EXPECT_FALSE(are_isomorphic(a, subdivide(complete_graph(4), 1)));
  EXPECT_FALSE(are_isomorphic(cycle_graph(6), [] {
    Graph g(6);
    for (auto [u, v] : std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}) g.add_edge(u, v);
    return g;
  }()));
}

TEST(Planarity, BoostAgreesWithEuler) {
  auto k4 = complete_graph(4);
  auto r = test_planarity(k4);
  ASSERT_TRUE(r.planar);
  EXPECT_TRUE(satisfies_euler(k4, r.rotation));
  auto k5 = test_planarity(complete_graph(5));
  EXPECT_FALSE(k5.planar);
  EXPECT_EQ(k5.kuratowski.size(), 10u);
  EXPECT_FALSE(is_planar(complete_bipartite(3, 3)));
}

TEST(Planarity, BadRotationFailsEuler) {
  auto k4 = complete_graph(4);
  RotationSystem rot{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  // the identity-sorted rotation of K4 is not planar
  EXPECT_FALSE(satisfies_euler(k4, rot));
  Graph lone(1);
  EXPECT_TRUE(satisfies_euler(lone, RotationSystem{{}}));
}

TEST(Rational, ParseAndCompare) {
  EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("-0.25").str(), "-1/4");
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ((Rational(1, 3) + Rational(1, 6)).str(), "1/2");
}
