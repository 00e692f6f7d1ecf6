#include <gtest/gtest.h>

#include <functional>

#include "clawfree/baselines.hpp"
#include "clawfree/forest.hpp"
#include "clawfree/generators.hpp"
#include "support/graphs.hpp"
#include "support/oracle.hpp"

using namespace clawfree;
namespace tg = testing_graphs;

namespace {

Weight cdn_of(const WeightedGraph& g, const std::vector<Vertex>& keep) {
  if (keep.empty()) return 0;
  return oracle::min_deletion_weight(induced_subgraph(g, keep).graph);
}

}  // namespace

TEST(ClawDeletionSetTree, SingleVertex) {
  auto g = tg::make(1, {});
  EXPECT_TRUE(claw_deletion_set_tree(RootedTree(g, 0)).empty());
}

TEST(ClawDeletionSetTree, StarRootedAtCenter) {
  auto g = tg::star(3);
  auto s = claw_deletion_set_tree(RootedTree(g, 0));
  EXPECT_EQ(s.members(), (std::vector<Vertex>{0}));
  EXPECT_EQ(oracle::min_deletion_weight(g), 1);
}

TEST(ClawDeletionSetTree, SpiderWithLegsOfLengthTwo) {
  auto g = tg::make(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}});
  auto s = claw_deletion_set_tree(RootedTree(g, 0));
  EXPECT_EQ(s.members(), (std::vector<Vertex>{0}));
  EXPECT_EQ(oracle::min_deletion_weight(g), 1);
}

TEST(ClawDeletionSetTree, FullBinaryHeightThree) {
  auto g = gen_full_kary(2, 3);
  auto s = claw_deletion_set_tree(RootedTree(g, 0));
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(brute_force_min(g).weight, 2);
  EXPECT_TRUE(verify_solution(g, s));
}

TEST(ClawDeletionSetTree, RejectsNonTree) {
  auto c = tg::cycle(4);
  EXPECT_THROW(RootedTree(c, 0), InvalidInput);
}

TEST(RootedTree, ParentAndChildren) {
  auto g = tg::make(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
  RootedTree t(g, 1);
  EXPECT_EQ(t.parent(1), kNoVertex);
  EXPECT_EQ(t.parent(4), 3u);
  EXPECT_EQ(t.children(1), (std::vector<Vertex>{0, 2, 3}));
  EXPECT_EQ(t.top_down().front(), 1u);
}

TEST(SolveForest, Examples) {
  EXPECT_EQ(solve_forest(tg::path(7)).size(), 0u);
  EXPECT_EQ(solve_forest(tg::disjoint(tg::star(3), tg::star(3))).size(), 2u);
  auto f = tg::disjoint(tg::star(3), tg::path(4));
  auto s = solve_forest(f);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(s.weight, 1);
  EXPECT_EQ(s.solver, "forest");
  EXPECT_EQ(oracle::min_deletion_weight(f), 1);
  EXPECT_THROW(solve_forest(tg::cycle(3)), InvalidInput);
}

TEST(SolveForest, MatchesOracleOnRandomTrees) {
  for (std::uint64_t seed = 1; seed <= 1500; ++seed) {
    const std::size_t n = 1 + seed % 13;
    auto t = random_tree(n, seed);
    auto s = solve_forest(t);
    ASSERT_EQ(static_cast<Weight>(s.size()), oracle::min_deletion_weight(t)) << "seed " << seed;
    ASSERT_TRUE(verify_solution(t, s.vertices));
  }
}

TEST(SolveForest, RootInvariance) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto t = random_tree(2 + seed % 40, seed * 7);
    const std::size_t expected = claw_deletion_set_tree(RootedTree(t, 0)).size();
    for (Vertex r = 0; r < t.num_vertices(); ++r) {
      auto s = claw_deletion_set_tree(RootedTree(t, r));
      ASSERT_EQ(s.size(), expected);
      ASSERT_TRUE(verify_solution(t, s));
    }
  }
}

// Recursive transcription with per-call results, checked against the
// output contract using exact cdn values of T_v, T_v+ and T_v - v.
TEST(ClawDeletionSetTree, PerCallContractSmallTrees) {
  for (std::uint64_t seed = 1; seed <= 250; ++seed) {
    const std::size_t n = 2 + seed % 11;
    auto g = random_tree(n, seed + 1000);
    const Vertex root = static_cast<Vertex>(seed % n);
    RootedTree t(g, root);
    std::function<std::vector<bool>(Vertex, Vertex)> call = [&](Vertex v, Vertex p) {
      std::vector<bool> s(n, false);
      auto kids = t.children(v);
      if (kids.empty()) return s;
      for (Vertex u : kids) {
        auto su = call(u, v);
        for (Vertex x = 0; x < n; ++x)
          if (su[x]) s[x] = true;
      }
      std::size_t c = 0;
      for (Vertex u : kids) c += !s[u];
      if (c >= 3) s[v] = true;
      else if (c == 2 && p != kNoVertex && !s[v]) s[p] = true;

      std::vector<Vertex> sub;  // T_v
      std::vector<Vertex> stack{v};
      while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        sub.push_back(x);
        for (Vertex y : t.children(x)) stack.push_back(y);
      }
      std::vector<Vertex> plus = sub, minus;
      if (p != kNoVertex) plus.push_back(p);
      for (Vertex x : sub)
        if (x != v) minus.push_back(x);
      const Weight c_plus = cdn_of(g, plus), c_v = cdn_of(g, sub), c_minus = cdn_of(g, minus);
      std::vector<Vertex> chosen;
      for (Vertex x = 0; x < n; ++x)
        if (s[x]) chosen.push_back(x);
      EXPECT_EQ(static_cast<Weight>(chosen.size()), c_plus) << "v=" << v;
      auto in = induced_subgraph(g, plus);
      std::vector<Vertex> local;
      for (std::size_t i = 0; i < in.original.size(); ++i)
        if (s[in.original[i]]) local.push_back(static_cast<Vertex>(i));
      EXPECT_EQ(local.size(), chosen.size());
      EXPECT_TRUE(verify_solution(in.graph, local));
      if (p != kNoVertex && c_plus == 1 + c_v) {
        EXPECT_TRUE(s[p]);
      }
      if (c_plus == c_v && c_v == 1 + c_minus) {
        EXPECT_TRUE(s[v]);
      }
      return s;
    };
    auto rec = call(root, kNoVertex);
    auto iter = claw_deletion_set_tree(t);
    for (Vertex x = 0; x < n; ++x) ASSERT_EQ(rec[x], iter.contains(x));
  }
}

TEST(ClosedForms, BinaryExamples) {
  EXPECT_EQ(cdn_full_binary(7), 1u);
  EXPECT_EQ(cdn_full_binary(1), 0u);
  EXPECT_EQ(cdn_full_binary(15), 2u);
  EXPECT_THROW(cdn_full_binary(6), InvalidInput);
  EXPECT_THROW(cdn_full_binary(0), InvalidInput);
}

TEST(ClosedForms, KaryExamples) {
  EXPECT_EQ(cdn_full_kary(3, 4), 1u);
  EXPECT_EQ(cdn_full_kary(3, 1), 0u);
  EXPECT_EQ(cdn_full_kary(4, 5), 1u);
  EXPECT_THROW(cdn_full_kary(2, 7), InvalidInput);
  EXPECT_THROW(cdn_full_kary(3, 5), InvalidInput);
}

TEST(ClosedForms, OracleOnSmallTrees) {
  EXPECT_EQ(oracle::min_deletion_weight(gen_full_kary(2, 2)), 1);
  EXPECT_EQ(oracle::min_deletion_weight(gen_full_kary(3, 1)), 1);
  EXPECT_EQ(oracle::min_deletion_weight(gen_full_kary(4, 1)), 1);
}

TEST(ClosedForms, AlgorithmMatchesFormulas) {
  for (std::uint64_t k = 2; k <= 5; ++k)
    for (unsigned h = 0; h <= 6; ++h) {
      auto g = gen_full_kary(k, h);
      ASSERT_EQ(g.num_vertices(), full_kary_size(k, h));
      const std::uint64_t formula = k == 2 ? cdn_full_binary(g.num_vertices()) : cdn_full_kary(k, g.num_vertices());
      EXPECT_EQ(solve_forest(g).size(), formula) << "k=" << k << " h=" << h;
      EXPECT_EQ(cdn_full_tree(k, h), formula);
    }
}

TEST(ClosedForms, DeletionFraction) {
  EXPECT_EQ(deletion_fraction(2, 2), (Rational{1, 7}));
  EXPECT_EQ(deletion_fraction(3, 1), (Rational{1, 4}));
  EXPECT_EQ(deletion_fraction(2, 0), (Rational{0, 1}));
  for (std::uint64_t k = 2; k <= 5; ++k)
    for (unsigned h = 0; h <= 6; ++h) {
      const std::uint64_t n = full_kary_size(k, h), c = cdn_full_tree(k, h);
      const std::uint64_t g = std::gcd(c, n);
      const Rational expected = c == 0 ? Rational{0, 1} : Rational{c / g, n / g};
      EXPECT_EQ(deletion_fraction(k, h), expected) << "k=" << k << " h=" << h;
    }
}

// Binary trees: the set is the vertices at depths h-2, h-5, ...; for k >= 3
// it is depths h-1, h-3, ...
TEST(ClosedForms, DepthStructure) {
  for (std::uint64_t k = 2; k <= 4; ++k)
    for (unsigned h = 0; h <= (k == 2 ? 8u : 5u); ++h) {
      auto g = gen_full_kary(k, h);
      auto s = claw_deletion_set_tree(RootedTree(g, 0));
      std::vector<int> depth(g.num_vertices(), 0);
      for (Vertex v = 1; v < g.num_vertices(); ++v) depth[v] = depth[(v - 1) / k] + 1;
      for (Vertex v = 0; v < g.num_vertices(); ++v) {
        const int d = depth[v], hh = static_cast<int>(h);
        const bool expected = k == 2 ? (d <= hh - 2 && (hh - 2 - d) % 3 == 0) : (d <= hh - 1 && (hh - 1 - d) % 2 == 0);
        ASSERT_EQ(s.contains(v), expected) << "k=" << k << " h=" << h << " v=" << v;
      }
    }
}
