#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "clawfree/dispatch.hpp"
#include "clawfree/generators.hpp"
#include "support/graphs.hpp"
#include "support/oracle.hpp"

using namespace clawfree;
namespace tg = testing_graphs;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / ("clawfree_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  void write(const std::string& file, const std::string& text) const { std::ofstream(path_ / file) << text; }

 private:
  fs::path path_;
};

}  // namespace

TEST(Dispatch, UnitTreeGoesToForest) {
  auto r = dispatch(random_tree(30, 5));
  EXPECT_EQ(r.solver, "forest");
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.verified, true);
}

TEST(Dispatch, WeightedTreeGoesToBlock) {
  auto t = random_tree(30, 5, {1, 9});
  auto r = dispatch(t);
  EXPECT_EQ(r.solver, "block");
  EXPECT_EQ(r.weight, solve_block_graph(t).weight);
  DispatchOptions forest;
  forest.forced = SolverClass::Forest;
  EXPECT_THROW(dispatch(t, forest), InvalidInput);
}

TEST(Dispatch, CycleGoesToTreewidth) {
  auto r = dispatch(tg::cycle(4));
  EXPECT_EQ(r.solver, "treewidth");
  EXPECT_EQ(r.width, 2);
  EXPECT_EQ(r.weight, 0);
}

TEST(Dispatch, SmallComponentsAreSkipped) {
  auto r = dispatch(tg::disjoint(tg::path(3), tg::complete(2)));
  EXPECT_EQ(r.solver, "trivial");
  EXPECT_EQ(r.components, 2u);
  EXPECT_EQ(r.verified, true);
}

TEST(Dispatch, MixedComponents) {
  auto g = tg::disjoint(tg::disjoint(tg::star(3), tg::cycle(5)), tg::friendship3());
  auto r = dispatch(g);
  EXPECT_EQ(r.components, 3u);
  EXPECT_EQ(r.weight, 2);
  EXPECT_EQ(r.verified, true);
  EXPECT_NE(r.solver.find("forest"), std::string::npos);
  EXPECT_EQ(r.weight, g.weight_of(r.vertices));
}

TEST(Dispatch, WideGraphsFallBackToOracleThenApprox) {
  auto dense = random_split(14, 10, 0.5, 3);
  DispatchOptions o;
  o.width_cap = 3;
  auto r = dispatch(dense, o);
  EXPECT_EQ(r.solver, "oracle");
  EXPECT_TRUE(r.exact);
  o.oracle_max_vertices = 10;
  auto a = dispatch(dense, o);
  EXPECT_EQ(a.solver, "approx");
  EXPECT_FALSE(a.exact);
  EXPECT_EQ(a.verified, true);
  EXPECT_LE(a.weight, 4 * r.weight);
  std::ostringstream os;
  write_report(os, a);
  EXPECT_EQ(os.str().rfind("APPROXIMATE", 0), 0u);
}

TEST(Dispatch, ForcedClassesAgree) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto g = random_block_graph(12, 4, seed, {1, 9});
    const Weight opt = oracle::min_deletion_weight(g);
    for (auto c : {SolverClass::Auto, SolverClass::Block, SolverClass::Treewidth, SolverClass::Oracle}) {
      DispatchOptions o;
      o.forced = c;
      auto r = dispatch(g, o);
      EXPECT_EQ(r.weight, opt) << to_string(c);
      EXPECT_EQ(r.verified, true);
    }
  }
}

TEST(Dispatch, WeightOnlyTreewidth) {
  DispatchOptions o;
  o.forced = SolverClass::Treewidth;
  o.weight_only = true;
  auto r = dispatch(tg::star(3), o);
  EXPECT_FALSE(r.has_set);
  EXPECT_EQ(r.weight, 1);
  EXPECT_FALSE(r.verified.has_value());
  auto j = to_json(r);
  EXPECT_TRUE(j["vertices"].is_null());
}

TEST(Dispatch, Deterministic) {
  auto g = random_partial_ktree(60, 3, 0.3, 11, {1, 9}).graph;
  auto a = dispatch(g, {}, "x"), b = dispatch(g, {}, "x");
  a.seconds = b.seconds = 0;
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Dispatch, JsonFields) {
  auto j = to_json(dispatch(tg::star(3), {}, "claw"));
  EXPECT_EQ(j["instance"], "claw");
  EXPECT_EQ(j["weight"], 1);
  EXPECT_EQ(j["size"], 1);
  EXPECT_EQ(j["vertices"], nlohmann::json::array({"0"}));
  EXPECT_EQ(j["verified"], true);
  EXPECT_EQ(j["exact"], true);
}

TEST(Dispatch, SolverClassNames) {
  for (auto c : {SolverClass::Auto, SolverClass::Forest, SolverClass::Block, SolverClass::Treewidth,
                 SolverClass::Oracle, SolverClass::Approx})
    EXPECT_EQ(solver_class_from_string(to_string(c)), c);
  EXPECT_FALSE(solver_class_from_string("cubic"));
}

TEST(Bench, ThreeTrees) {
  TempDir dir("bench_trees");
  for (int i = 1; i <= 3; ++i)
    dir.write("t" + std::to_string(i) + ".txt", serialize_graph(random_tree(50, i), GraphFormat::EdgeList));
  std::ostringstream warn, csv;
  auto rows = bench(dir.path(), 3, {}, warn);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].file, "t1.txt");
  EXPECT_EQ(rows[0].solver, "forest");
  EXPECT_EQ(rows[0].repetitions, 3u);
  EXPECT_TRUE(warn.str().empty());
  write_bench_csv(csv, rows);
  std::size_t lines = 0;
  for (char ch : csv.str()) lines += ch == '\n';
  EXPECT_EQ(lines, 4u);
}

TEST(Bench, EmptyDirectoryIsAnError) {
  TempDir dir("bench_empty");
  std::ostringstream warn;
  EXPECT_THROW(bench(dir.path(), 1, {}, warn), InvalidInput);
  EXPECT_THROW(bench(dir.path() / "missing", 1, {}, warn), InvalidInput);
}

TEST(Bench, MalformedFileIsSkipped) {
  TempDir dir("bench_mixed");
  for (int i = 1; i <= 4; ++i)
    dir.write("g" + std::to_string(i) + ".txt", serialize_graph(random_tree(20, i), GraphFormat::EdgeList));
  dir.write("g5.txt", "0 1\n1 2 3\n");
  std::ostringstream warn;
  auto rows = bench(dir.path(), 1, {}, warn);
  EXPECT_EQ(rows.size(), 4u);
  EXPECT_NE(warn.str().find("g5.txt"), std::string::npos);
}

TEST(Bench, AllMalformedIsAnError) {
  TempDir dir("bench_bad");
  dir.write("a.txt", "nonsense\n");
  std::ostringstream warn;
  EXPECT_THROW(bench(dir.path(), 1, {}, warn), InvalidInput);
}
