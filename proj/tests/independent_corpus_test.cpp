// Cross-checks on ultrametric spaces produced WITHOUT the representing-tree
// machinery: the min-max path closure of a random weighted graph (the tightest
// ultrametric below a dissimilarity). Keeps the sweeps from only ever seeing
// inputs that were built by the code under test.

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <thread>

#include "fixtures.hpp"
#include "ultra/ultra.hpp"

using namespace ultra;

namespace {

Space random_subdominant_ultrametric(size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> w(n, std::vector<int>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) w[i][j] = w[j][i] = 1 + static_cast<int>(rng() % 12);
  // min-max closure: d(i,j) = min over paths of the heaviest edge
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const int via = std::max(w[i][k], w[k][j]);
        if (i != k && j != k && via < w[i][j]) w[i][j] = via;
      }
  std::vector<std::string> names;
  std::vector<std::vector<Dist>> table(n, std::vector<Dist>(n, Dist(0)));
  for (size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i + 1));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j) table[i][j] = Dist(w[i][j]);
  return Space(std::move(names), table);
}

std::set<std::vector<size_t>> mappings(const std::vector<Isometry>& list) {
  std::set<std::vector<size_t>> out;
  for (const Isometry& g : list) out.insert(g.mapping());
  return out;
}

}  // namespace

TEST(IndependentCorpus, ClosureIsUltrametric) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    const Space s = random_subdominant_ultrametric(2 + seed % 9, seed);
    ASSERT_EQ(s.kind(), Kind::Ultrametric) << "seed " << seed;
    EXPECT_LE(s.spectrum().size(), s.size());
  }
}

TEST(IndependentCorpus, TreeRoundTripAndBallGraph) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const Space s = random_subdominant_ultrametric(2 + seed % 8, seed * 53 + 1);
    const ReprTree t = build_tree(s);
    for (size_t i = 0; i < s.size(); ++i)
      for (size_t j = 0; j < s.size(); ++j)
        ASSERT_EQ(recover_distance(t, i, j), s.dist(i, j)) << "seed " << seed;
    ASSERT_EQ(enumerate_balls(s).size(), t.nodes.size()) << "seed " << seed;
    ASSERT_TRUE(gamma_is_tree(s).is_tree) << "seed " << seed;
    ASSERT_TRUE(gamma_tree_matches_repr(s)) << "seed " << seed;
  }
}

TEST(IndependentCorpus, GroupAgainstBruteForce) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Space s = random_subdominant_ultrametric(2 + seed % 6, seed * 97 + 5);
    const IsoGroup g = isometry_group(s, {.full_list_cap = GroupOrder(50000)});
    ASSERT_TRUE(g.full_list.has_value());
    ASSERT_EQ(mappings(*g.full_list), mappings(oracle_isometries(s))) << "seed " << seed;
    ASSERT_EQ(min_fixed_points(s).count, oracle_min_fixed_points(s)) << "seed " << seed;
  }
}

TEST(IndependentCorpus, CertificateChain) {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    const Space s = random_subdominant_ultrametric(2 + seed % 8, seed * 131 + 7);
    const bool expected = is_max_rigid(s).max_rigid;
    ASSERT_EQ(balls_are_stars(s).all_stars, expected) << "seed " << seed;
    ASSERT_EQ(hamiltonian_decreasing_path(s).has_value(), expected) << "seed " << seed;
    ASSERT_EQ(distinct_weight_spanning_star(s).has_value(), expected) << "seed " << seed;
    ASSERT_EQ(star_determination_check(s), expected) << "seed " << seed;
  }
}

// relabeling points never changes the classification
TEST(IndependentCorpus, ValidatePermutationEquivariant) {
  std::mt19937_64 rng(11);
  auto relabeled = [&](const Space& s) {
    std::vector<size_t> perm(s.size());
    std::iota(perm.begin(), perm.end(), size_t{0});
    for (size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
    std::vector<std::string> names(s.size());
    std::vector<std::vector<Dist>> table(s.size(), std::vector<Dist>(s.size()));
    for (size_t i = 0; i < s.size(); ++i) {
      names[perm[i]] = s.point_name(i);
      for (size_t j = 0; j < s.size(); ++j) table[perm[i]][perm[j]] = s.dist(i, j);
    }
    return Space(std::move(names), table);
  };
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const Space u = random_subdominant_ultrametric(3 + seed % 7, seed);
    EXPECT_EQ(relabeled(u).kind(), u.kind());
    const Space m = generate_space(GenKind::RandomMetricNonUltra, 3 + seed % 6, seed);
    EXPECT_EQ(relabeled(m).kind(), m.kind());
  }
  const Space bad = fixtures::from_rows({"a", "b", "c"}, {{0, 1, 1}, {1, 0, 5}, {1, 5, 0}});
  for (int it = 0; it < 5; ++it) EXPECT_EQ(relabeled(bad).kind(), Kind::Invalid);
}

// the concurrency contract: pure functions over immutable values
TEST(IndependentCorpus, ConcurrentAnalysesAgree) {
  const Space s = random_subdominant_ultrametric(8, 99);
  const std::string expected_code = canonical_code(build_tree(s));
  const GroupOrder expected_order = isometry_group(s).order;
  const size_t expected_balls = enumerate_balls(s).size();

  std::vector<std::thread> workers;
  std::vector<int> ok(8, 0);
  for (int w = 0; w < 8; ++w)
    workers.emplace_back([&, w] {
      for (int it = 0; it < 20; ++it) {
        if (canonical_code(build_tree(s)) != expected_code) return;
        if (isometry_group(s).order != expected_order) return;
        if (enumerate_balls(s).size() != expected_balls) return;
      }
      ok[w] = 1;
    });
  for (auto& t : workers) t.join();
  for (int w = 0; w < 8; ++w) EXPECT_EQ(ok[w], 1) << "worker " << w;
}
