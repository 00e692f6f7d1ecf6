#include <gtest/gtest.h>

#include <sstream>

#include "clawfree/block_solver.hpp"
#include "clawfree/forest.hpp"
#include "clawfree/generators.hpp"
#include "support/graphs.hpp"
#include "support/oracle.hpp"

using namespace clawfree;
namespace tg = testing_graphs;

namespace {

BlockDPTables tables_of(const WeightedGraph& g) { return compute_block_tables(block_cutpoint_tree(g), g); }

WeightedGraph scaled(const WeightedGraph& g, Weight c) {
  GraphBuilder b(g.num_vertices());
  for (auto [u, v] : g.edges()) b.add_edge(u, v);
  for (Vertex v = 0; v < g.num_vertices(); ++v) b.set_weight(v, g.weight(v) * c);
  return std::move(b).build();
}

}  // namespace

TEST(BlockSolver, PathOfThree) {
  auto g = tg::path(3);
  auto t = tables_of(g);
  // blocks {0,1}, {1,2}; cutpoint 1 is node 2
  ASSERT_EQ(t.root, 2u);
  EXPECT_EQ(t.f1[t.root], 1);
  EXPECT_EQ(t.f2[t.root], 0);
  EXPECT_FALSE(t.f3_defined[t.root]);
  for (std::uint32_t b = 0; b < 2; ++b) {
    EXPECT_EQ(t.s[b], 1);
    EXPECT_EQ(t.f1[b], 1);
    EXPECT_EQ(t.f2[b], 0);
    EXPECT_EQ(t.f3[b], 0);
  }
  EXPECT_EQ(solve_block_graph(g).weight, 0);
}

TEST(BlockSolver, Claw) {
  auto t = tables_of(tg::star(3));
  EXPECT_EQ(t.f1[t.root], 1);
  EXPECT_EQ(t.f2[t.root], 1);
  EXPECT_EQ(t.optimum(), 1);
  auto s = solve_block_graph(tg::star(3));
  EXPECT_EQ(s.weight, 1);
  EXPECT_EQ(s.vertices, (std::vector<Vertex>{0}));  // ties prefer deleting the cutpoint
}

TEST(BlockSolver, WeightedClawDeletesLightLeaf) {
  auto g = tg::star(3, {10, 4, 2, 7});
  auto s = solve_block_graph(g);
  EXPECT_EQ(s.weight, 2);
  EXPECT_EQ(s.vertices, (std::vector<Vertex>{2}));
  EXPECT_EQ(oracle::min_deletion_weight(g), 2);
}

TEST(BlockSolver, FriendshipGraph) {
  auto g = tg::friendship3();
  auto t = tables_of(g);
  EXPECT_EQ(t.f1[t.root], 1);
  EXPECT_EQ(t.f2[t.root], 2);
  for (std::uint32_t b = 0; b < 3; ++b) {
    EXPECT_EQ(t.s[b], 2);
    EXPECT_EQ(t.f1[b], 2);
    EXPECT_EQ(t.f2[b], 0);
    EXPECT_EQ(t.f3[b], 0);
  }
  auto s = solve_block_graph(g);
  EXPECT_EQ(s.vertices, (std::vector<Vertex>{0}));
  EXPECT_EQ(oracle::min_deletion_weight(g), 1);
}

TEST(BlockSolver, CompleteAndErrors) {
  EXPECT_EQ(solve_block_graph(tg::complete(5)).size(), 0u);
  EXPECT_EQ(solve_block_graph(tg::complete(1)).size(), 0u);
  EXPECT_THROW(solve_block_graph(tg::cycle(4)), InvalidInput);
  EXPECT_THROW(solve_block_graph(tg::disjoint(tg::path(2), tg::path(2))), InvalidInput);
}

TEST(BlockSolver, LeafBlocksHaveBaseValues) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto g = random_block_graph(25, 5, seed, {1, 9});
    auto bct = block_cutpoint_tree(g);
    if (bct.trivial()) continue;
    auto t = compute_block_tables(bct, g);
    std::vector<bool> is_cut(g.num_vertices(), false);
    for (Vertex c : bct.cutpoints) is_cut[c] = true;
    for (std::uint32_t b = 0; b < bct.num_blocks(); ++b) {
      Weight expect_s = 0;
      for (Vertex v : bct.blocks[b])
        if (!is_cut[v]) expect_s += g.weight(v);
      EXPECT_EQ(t.s[b], expect_s);
      if (bct.children[b].empty()) {
        EXPECT_EQ(t.f1[b], t.s[b]);
        EXPECT_EQ(t.f2[b], 0);
        EXPECT_EQ(t.f3[b], 0);
      }
    }
  }
}

TEST(BlockSolver, TableInvariants) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto g = random_block_graph(30, 4, seed, {1, 9});
    auto bct = block_cutpoint_tree(g);
    if (bct.trivial()) continue;
    auto t = compute_block_tables(bct, g);
    for (std::uint32_t x = 0; x < bct.num_nodes(); ++x) {
      if (bct.is_block(x)) {
        EXPECT_LE(t.f2[x], t.f1[x]);
        EXPECT_LE(t.f2[x], t.f3[x]);
      } else {
        EXPECT_GE(t.f1[x], g.weight(bct.cut_vertex(x)));
        if (t.f3_defined[x]) {
          EXPECT_GE(t.f3[x], t.f2[x]);
        }
      }
    }
  }
}

TEST(BlockSolver, MatchesOracle) {
  for (std::uint64_t seed = 1; seed <= 1500; ++seed) {
    const std::size_t n = 1 + seed % 14;
    const std::size_t q = 2 + seed % 4;
    auto g = random_block_graph(n, q, seed, {1, 9});
    auto s = solve_block_graph(g);
    ASSERT_EQ(s.weight, oracle::min_deletion_weight(g)) << "seed " << seed;
    ASSERT_TRUE(verify_solution(g, s.vertices));
    ASSERT_EQ(g.weight_of(s.vertices), s.weight);
  }
}

TEST(BlockSolver, AgreesWithForestSolverOnTrees) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto t = random_tree(2 + seed % 200, seed);
    EXPECT_EQ(static_cast<std::size_t>(solve_block_graph(t).weight), solve_forest(t).size());
  }
}

TEST(BlockSolver, ScalingWeights) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto g = random_block_graph(40, 4, seed, {1, 9});
    const Weight base = solve_block_graph(g).weight;
    EXPECT_EQ(solve_block_graph(scaled(g, 3)).weight, 3 * base);
  }
}

TEST(BlockSolver, TableDump) {
  auto g = tg::path(3);
  auto bct = block_cutpoint_tree(g);
  std::ostringstream os;
  write_block_tables(os, compute_block_tables(bct, g), bct, g);
  EXPECT_EQ(os.str(), "kind\tid\ts\tf1\tf2\tf3\ncut\t1\t-\t1\t0\t-\nblock\t0\t1\t1\t0\t0\nblock\t1\t1\t1\t0\t0\n");
}
