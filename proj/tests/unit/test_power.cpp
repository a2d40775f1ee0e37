#include <gtest/gtest.h>

#include <random>

#include "i2dp/corpus.hpp"
#include "i2dp/power.hpp"

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
}  // namespace

TEST(Power, F2Host) {
  auto f = cnf(2, {{1, 2}, {-1, -2}});
  auto e = check_clause_linked_planarity(f);
  auto r = assemble_reduction(f, e.sides);
  auto h = build_planar_host(f, e);
  EXPECT_EQ(h.graph.order(), 58u);
  EXPECT_LE(h.graph.graph().max_degree(), 3);
  EXPECT_TRUE(satisfies_euler(h.graph.graph(), h.rotation));
  auto vmap = assign_vertices(r, h);
  EXPECT_EQ(vmap.size(), 30u);
  // u^N_2 and u^S_2 sit on either side of the c1-c2 junction
  EXPECT_EQ(vmap[r.v(VertexLabel::entry(2, Dir::kN))], h.p(1, 16));
  EXPECT_EQ(vmap[r.v(VertexLabel::entry(2, Dir::kS))], h.p(2, 0));
  int radius = min_power_radius(r.graph.graph(), h.graph.graph(), vmap);
  EXPECT_LE(radius, 16);
  EXPECT_GT(radius, 1);
}

TEST(Power, IdentityMap) {
  Graph g = cycle_graph(6);
  std::vector<Vertex> id{0, 1, 2, 3, 4, 5};
  EXPECT_EQ(min_power_radius(g, g, id), 1);
  PowerWitness w{g, {}, id, 1};
  EXPECT_TRUE(verify_power_containment(g, w).ok);
}

TEST(Power, ShuffledMapFails) {
  auto f = normalize(parse_dimacs(read_file(std::string(I2DP_CORPUS_DIR) + "/strict66.cnf")), false).formula;
  auto e = check_clause_linked_planarity(f);
  auto r = assemble_reduction(f, e.sides);
  auto w = build_power_witness(r, e);
  ASSERT_TRUE(verify_power_containment(r.graph.graph(), w).ok);
  std::mt19937 rng(7);
  std::shuffle(w.vmap.begin(), w.vmap.end(), rng);
  auto a = verify_power_containment(r.graph.graph(), w);
  EXPECT_FALSE(a.ok);
  ASSERT_TRUE(a.offending.has_value());
  EXPECT_GT(a.max_stretch, 16);
}

TEST(Power, SingleClauseIsTreeLike) {
  auto f = cnf(3, {{1, 2, 3}});
  auto e = check_clause_linked_planarity(f);
  auto h = build_planar_host(f, e);
  EXPECT_EQ(h.graph.order(), 17u + 36u);
  // one path plus three pendant cycles: cyclomatic number 3
  EXPECT_EQ(h.graph.graph().size(), h.graph.order() - 1 + 3);
}

TEST(Power, Corpus) {
  for (const auto& ni : load_corpus_dir(I2DP_CORPUS_DIR)) {
    auto f = normalize(ni.formula, false).formula;
    if (f.m() == 0) continue;
    auto e = check_clause_linked_planarity(f);
    auto r = assemble_reduction(f, e.sides);
    auto w = build_power_witness(r, e);
    std::size_t n = 0;
    for (auto& occ : occurrences_by_variable(f)) n += !occ.empty();
    EXPECT_EQ(w.host.order(), 17u * f.m() + 12u * n) << ni.name;
    EXPECT_LE(w.host.max_degree(), 3) << ni.name;
    auto a = verify_power_containment(r.graph.graph(), w);
    EXPECT_TRUE(a.ok) << ni.name << " stretch " << a.max_stretch;
  }
}
