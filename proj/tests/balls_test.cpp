#include "ultra/balls.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ultra/generate.hpp"

using namespace ultra;

TEST(Balls, EnumerateR4) {
  const auto balls = enumerate_balls(fixtures::r4());
  // 4 singletons, {p3,p4}, {p2,p3,p4}, X: the 7 nodes of the tree
  ASSERT_EQ(balls.size(), 7u);
  EXPECT_EQ(balls[0], (Ball{0}));
  EXPECT_EQ(balls[4], (Ball{2, 3}));
  EXPECT_EQ(balls[5], (Ball{1, 2, 3}));
  EXPECT_EQ(balls[6], (Ball{0, 1, 2, 3}));
}

TEST(Balls, EnumerateNU3) {
  const auto balls = enumerate_balls(fixtures::nu3());
  ASSERT_EQ(balls.size(), 6u);
  EXPECT_EQ(balls[3], (Ball{0, 2}));  // {x1,x3}
  EXPECT_EQ(balls[4], (Ball{1, 2}));  // {x2,x3}
  EXPECT_EQ(balls[5], (Ball{0, 1, 2}));
}

TEST(Balls, EnumerateP2) {
  EXPECT_EQ(enumerate_balls(fixtures::p2()).size(), 3u);
}

TEST(Balls, SingletonSpace) {
  const Space one({"a"}, {{Dist(0)}});
  EXPECT_EQ(enumerate_balls(one).size(), 1u);
  auto rec = gamma_is_tree(one);
  EXPECT_TRUE(rec.is_tree);
  EXPECT_EQ(rec.vertex_count, 1u);
  EXPECT_EQ(rec.edge_count, 0u);
  EXPECT_TRUE(gamma_tree_matches_repr(one));
}

TEST(Balls, BallFamilyMatchesTreeNodes) {
  for (auto& s : {fixtures::r4(), fixtures::f3(), fixtures::e3(), fixtures::u6()}) {
    const auto balls = enumerate_balls(s);
    const ReprTree t = build_tree(s);
    ASSERT_EQ(balls.size(), t.nodes.size());
    for (const ReprNode& nd : t.nodes)
      EXPECT_TRUE(std::binary_search(balls.begin(), balls.end(), nd.leaf_set,
                                     detail::BallOrder{}));
  }
}

TEST(Balls, GammaGraphCounts) {
  const GammaGraph nu3 = gamma_graph(fixtures::nu3());
  EXPECT_EQ(nu3.vertices.size(), 6u);
  EXPECT_EQ(nu3.edges.size(), 6u);

  const GammaGraph r4 = gamma_graph(fixtures::r4());
  EXPECT_EQ(r4.vertices.size(), 7u);
  EXPECT_EQ(r4.edges.size(), 6u);

  const GammaGraph p2 = gamma_graph(fixtures::p2());
  EXPECT_EQ(p2.vertices.size(), 3u);
  EXPECT_EQ(p2.edges.size(), 2u);
  EXPECT_EQ(p2.vertices[p2.root_vertex].size(), 2u);
}

// the triangle-with-pendants shape: a 4-cycle X, {x1,x3}, {x3}, {x2,x3}
// with pendant singletons {x1} and {x2}
TEST(Balls, GammaNU3Shape) {
  const GammaGraph g = gamma_graph(fixtures::nu3());
  std::vector<size_t> degree(g.vertices.size(), 0);
  for (auto& [a, b] : g.edges) {
    ++degree[a];
    ++degree[b];
  }
  std::sort(degree.begin(), degree.end());
  EXPECT_EQ(degree, (std::vector<size_t>{1, 1, 2, 2, 3, 3}));
}

TEST(Balls, GammaIsTree) {
  auto r4 = gamma_is_tree(fixtures::r4());
  EXPECT_TRUE(r4.is_tree);
  EXPECT_EQ(r4.vertex_count, 7u);
  EXPECT_EQ(r4.edge_count, 6u);

  auto nu3 = gamma_is_tree(fixtures::nu3());
  EXPECT_FALSE(nu3.is_tree);
  EXPECT_EQ(nu3.vertex_count, 6u);
  EXPECT_EQ(nu3.edge_count, 6u);

  auto e3 = gamma_is_tree(fixtures::e3());
  EXPECT_TRUE(e3.is_tree);
  EXPECT_EQ(e3.vertex_count, 4u);
  EXPECT_EQ(e3.edge_count, 3u);
}

TEST(Balls, GammaTreeMatchesRepr) {
  EXPECT_TRUE(gamma_tree_matches_repr(fixtures::r4()));
  EXPECT_TRUE(gamma_tree_matches_repr(fixtures::f3()));
  EXPECT_TRUE(gamma_tree_matches_repr(fixtures::u6()));
  for (uint64_t seed = 0; seed < 20; ++seed)
    EXPECT_TRUE(gamma_tree_matches_repr(generate_space(GenKind::RandomTree, 2 + seed % 8, seed)));
  EXPECT_THROW(gamma_tree_matches_repr(fixtures::nu3()), precondition_error);
}

TEST(Balls, TreeTestEquivalentToUltrametricity) {
  for (uint64_t seed = 0; seed < 15; ++seed) {
    const Space u = generate_space(GenKind::RandomTree, 2 + seed % 7, seed);
    EXPECT_TRUE(gamma_is_tree(u).is_tree);
    const Space m = generate_space(GenKind::RandomMetricNonUltra, 3 + seed % 5, seed);
    EXPECT_FALSE(gamma_is_tree(m).is_tree);
  }
}

TEST(Balls, CompareGammaEdges) {
  // NU3 has 6 balls; U6 is the ultrametric partner with 6 balls
  auto cmp = compare_gamma_edges(fixtures::nu3(), fixtures::u6());
  EXPECT_EQ(cmp.metric_edges, 6u);
  EXPECT_EQ(cmp.ultra_edges, 5u);
  EXPECT_TRUE(cmp.verdict);

  auto same = compare_gamma_edges(fixtures::r4(), fixtures::r4());
  EXPECT_EQ(same.metric_edges, 6u);
  EXPECT_EQ(same.ultra_edges, 6u);
  EXPECT_TRUE(same.verdict);

  // F3 and R4 both have 7 balls and both are ultrametric: equality required
  auto both = compare_gamma_edges(fixtures::f3(), fixtures::r4());
  EXPECT_EQ(both.metric_edges, 6u);
  EXPECT_EQ(both.ultra_edges, 6u);
  EXPECT_TRUE(both.verdict);

  EXPECT_THROW(compare_gamma_edges(fixtures::nu3(), fixtures::e3()), precondition_error);
  EXPECT_THROW(compare_gamma_edges(fixtures::r4(), fixtures::nu3()), precondition_error);
}

TEST(Balls, EdgeInequalityOverGeneratedPairs) {
  // group generated spaces by ball count; metric never beats ultrametric
  std::vector<Space> metrics, ultras;
  for (uint64_t seed = 0; seed < 12; ++seed) {
    metrics.push_back(generate_space(GenKind::RandomMetricNonUltra, 3 + seed % 4, seed));
    ultras.push_back(generate_space(GenKind::RandomTree, 2 + seed % 6, seed));
  }
  size_t paired = 0;
  for (const Space& m : metrics)
    for (const Space& u : ultras) {
      if (enumerate_balls(m).size() != enumerate_balls(u).size()) continue;
      auto cmp = compare_gamma_edges(m, u);
      EXPECT_GE(cmp.metric_edges, cmp.ultra_edges);
      EXPECT_TRUE(cmp.verdict);
      ++paired;
    }
  EXPECT_GT(paired, 0u);
}
