// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//
//   acceptance            all criteria
//   acceptance 3 8        selected criteria only

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "clawfree/clawfree.hpp"

using namespace clawfree;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

template <class F>
double timed(F&& f) {
  const auto t = Clock::now();
  f();
  return seconds_since(t);
}

struct Outcome {
  bool pass = true;
  std::string detail;
  int failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    pass = false;
    if (failures++ == 0) first_failure = what;
  }
};

void report(int id, const char* title, const Outcome& o) {
  std::printf("%s criterion %d: %s (%s", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
  if (o.failures) std::printf("; %d failures, first: %s", o.failures, o.first_failure.c_str());
  std::printf(")\n");
  std::fflush(stdout);
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

WeightedGraph graph_from_mask(std::size_t n, std::uint64_t mask) {
  GraphBuilder b(n);
  std::size_t bit = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1u) b.add_edge(u, v);
  return std::move(b).build();
}

// Minimum vertex cover by subset enumeration.
std::size_t brute_vertex_cover(const WeightedGraph& g) {
  const std::size_t n = g.num_vertices();
  const auto edges = g.edges();
  std::size_t best = n;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    const auto size = static_cast<std::size_t>(std::popcount(s));
    if (size >= best) continue;
    bool ok = true;
    for (auto [u, v] : edges) ok = ok && ((s >> u & 1u) || (s >> v & 1u));
    if (ok) best = size;
  }
  return best;
}

// Every claw as (center, three leaves), from adjacency rows; independent of
// the library's claw finder.
template <class Visit>
void for_each_claw(const WeightedGraph& g, Visit&& visit) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
  for (Vertex c = 0; c < n; ++c) {
    std::vector<Vertex> nb;
    for (Vertex v = 0; v < n; ++v)
      if (adj[c][v]) nb.push_back(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (adj[nb[i]][nb[j]]) continue;
        for (std::size_t l = j + 1; l < nb.size(); ++l)
          if (!adj[nb[i]][nb[l]] && !adj[nb[j]][nb[l]]) visit(c, nb[i], nb[j], nb[l]);
      }
  }
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const auto t = Clock::now();
  const std::size_t count = 10'000;
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t seed = 1'000'000 + i;
    seeds.insert(seed);
    auto g = random_tree(1 + i % 15, seed);
    auto s = solve_forest(g);
    auto b = brute_force_min(g);
    if (static_cast<Weight>(s.size()) != b.weight) o.fail("seed " + std::to_string(seed) + " size mismatch");
    if (!verify_solution(g, s.vertices)) o.fail("seed " + std::to_string(seed) + " does not verify");
  }
  const double secs = seconds_since(t);
  if (secs >= 60) o.fail("suite took " + fmt("%.1f", secs) + " s");
  o.detail = std::to_string(count) + " trees, n 1..15, " + std::to_string(seeds.size()) + " seeds, " +
             fmt("%.2f s", secs);
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::size_t checked = 0, brute = 0;
  for (std::uint64_t k = 2; k <= 5; ++k)
    for (unsigned h = 0; h <= 6; ++h) {
      auto g = gen_full_kary(k, h);
      const std::uint64_t n = g.num_vertices();
      const std::uint64_t formula = k == 2 ? cdn_full_binary(n) : cdn_full_kary(k, n);
      const std::uint64_t got = solve_forest(g).size();
      const std::string where = "k=" + std::to_string(k) + " h=" + std::to_string(h);
      if (got != formula) o.fail(where + ": solver " + std::to_string(got) + " formula " + std::to_string(formula));
      ++checked;
      if (h <= 3) {
        if (static_cast<Weight>(formula) != brute_force_min(g).weight) o.fail(where + ": brute force differs");
        ++brute;
      }
    }
  o.detail = std::to_string(checked) + " (k,h) pairs, " + std::to_string(brute) + " also by brute force";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto t = Clock::now();
  const std::size_t count = 10'000;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t seed = 2'000'000 + i;
    auto g = random_block_graph(1 + i % 14, 2 + i % 5, seed, {1, 9});
    auto s = solve_block_graph(g);
    const Weight opt = brute_force_min(g).weight;
    if (s.weight != opt) o.fail("seed " + std::to_string(seed) + " weight mismatch");
    if (!verify_solution(g, s.vertices)) o.fail("seed " + std::to_string(seed) + " does not verify");
    if (g.weight_of(s.vertices) != s.weight) o.fail("seed " + std::to_string(seed) + " set weight mismatch");
  }
  const double secs = seconds_since(t);
  if (secs >= 300) o.fail("suite took " + fmt("%.1f", secs) + " s");
  o.detail = std::to_string(count) + " block graphs, n 1..14, weights 1-9, " + fmt("%.2f s", secs);
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto t = Clock::now();
  const std::size_t count = 10'000;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t seed = 3'000'000 + i;
    const std::size_t k = 1 + i % 3;
    const std::size_t n = k + 1 + (i / 3) % (13 - k);
    const double p = 0.1 * static_cast<double>(i % 6);
    auto pk = random_partial_ktree(n, k, p, seed, {1, 9});
    auto s = solve_treewidth(pk.graph, make_nice(pk.decomposition));
    const Weight opt = brute_force_min(pk.graph).weight;
    if (s.weight != opt) o.fail("seed " + std::to_string(seed) + " weight mismatch");
    if (!verify_solution(pk.graph, s.vertices)) o.fail("seed " + std::to_string(seed) + " does not verify");
  }
  const double secs = seconds_since(t);
  if (secs >= 600) o.fail("suite took " + fmt("%.1f", secs) + " s");
  o.detail = std::to_string(count) + " partial k-trees, k 1..3, n <= 13, weights 1-9, " + fmt("%.2f s", secs);
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const std::uint64_t seed = 4'000'000 + i;
    auto g = random_tree(1 + i % 200, seed);
    const Weight f = static_cast<Weight>(solve_forest(g).size());
    const Weight b = solve_block_graph(g).weight;
    const Weight w = solve_treewidth(g).weight;
    if (f != b || b != w) o.fail("tree seed " + std::to_string(seed));
  }
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::uint64_t seed = 5'000'000 + i;
    auto g = random_block_graph(1 + i % 200, 4, seed, {1, 9});
    const Weight b = solve_block_graph(g).weight;
    const Weight w = solve_treewidth(g).weight;
    if (b != w) o.fail("block seed " + std::to_string(seed));
  }
  o.detail = "1000 unit trees n <= 200 (forest/block/treewidth), 200 weighted block graphs n <= 200 (block/treewidth)";
  return o;
}

struct ReductionStats {
  std::vector<double> ratios;
  std::size_t instances = 0;
};

Outcome criterion6(ReductionStats& stats) {
  Outcome o;
  std::size_t sources = 0, claws = 0;
  auto check = [&](const WeightedGraph& g, const std::string& name) {
    ReductionMap r = vc_to_split(g);
    const std::size_t vc = brute_vertex_cover(g);
    const Weight opt = brute_force_min(r.graph).weight;
    if (static_cast<Weight>(vc) != opt)
      o.fail(name + ": vc " + std::to_string(vc) + " vs " + std::to_string(opt));
    std::vector<char> in_i(r.graph.num_vertices(), 0);
    for (Vertex v : r.independent) in_i[v] = 1;
    for_each_claw(r.graph, [&](Vertex c, Vertex a, Vertex b, Vertex d) {
      ++claws;
      if (in_i[c] + in_i[a] + in_i[b] + in_i[d] != 2) o.fail(name + ": claw outside Claim 1");
    });
    const Weight approx = greedy_4_approx(r.graph).weight;
    stats.ratios.push_back(static_cast<double>(approx) / static_cast<double>(opt));
    ++sources;
  };
  for (std::size_t n = 2; n <= 5; ++n) {
    const std::size_t pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      auto g = graph_from_mask(n, mask);
      if (is_connected(g)) check(g, "n=" + std::to_string(n) + " mask=" + std::to_string(mask));
    }
  }
  detail::Rng rng(6'000'000);
  std::size_t random = 0;
  while (random < 100) {
    auto g = graph_from_mask(6, rng.next() & ((std::uint64_t{1} << 15) - 1));
    if (!is_connected(g)) continue;
    check(g, "random 6-vertex #" + std::to_string(random));
    ++random;
  }
  stats.instances = sources;
  o.detail = std::to_string(sources) + " connected sources (all labelled n 2..5, 100 random n=6), " +
             std::to_string(claws) + " claws checked";
  return o;
}

Outcome criterion7(const ReductionStats& red) {
  Outcome o;
  std::size_t instances = 0;
  double worst = 0;
  auto check = [&](const WeightedGraph& g, const std::string& name) {
    const Weight opt = brute_force_min(g).weight;
    auto a = greedy_4_approx(g);
    if (!verify_solution(g, a.vertices)) o.fail(name + " does not verify");
    if (a.weight > 4 * opt) o.fail(name + " exceeds 4 x optimum");
    if (opt > 0) worst = std::max(worst, static_cast<double>(a.weight) / static_cast<double>(opt));
    ++instances;
  };
  for (std::uint64_t i = 0; i < 400; ++i) check(random_tree(4 + i % 12, 7'000'000 + i, {1, 9}), "tree");
  for (std::uint64_t i = 0; i < 400; ++i)
    check(random_block_graph(4 + i % 11, 2 + i % 4, 7'100'000 + i, {1, 9}), "block");
  for (std::uint64_t i = 0; i < 400; ++i)
    check(random_partial_ktree(5 + i % 9, 1 + i % 3, 0.2, 7'200'000 + i, {1, 9}).graph, "partial k-tree");
  for (std::uint64_t i = 0; i < 200; ++i)
    check(random_split(2 + i % 8, 2 + i % 6, 0.5, 7'300'000 + i, {1, 9}), "split");
  double rmax = 0, rsum = 0;
  for (double r : red.ratios) rmax = std::max(rmax, r), rsum += r;
  const double rmean = red.ratios.empty() ? 0 : rsum / static_cast<double>(red.ratios.size());
  o.detail = std::to_string(instances) + " instances, worst ratio " + fmt("%.3f", worst) + "; reduction instances: " +
             std::to_string(red.ratios.size()) + ", ratio mean " + fmt("%.3f", rmean) + " max " + fmt("%.3f", rmax);
  return o;
}

// Smallest of `reps` timings.
double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) best = std::min(best, timed(f));
  return best;
}

Outcome criterion8() {
  Outcome o;
  std::string detail;
  auto series = [&](const char* name, const std::vector<std::size_t>& sizes, const std::function<double(std::size_t)>& run) {
    std::vector<double> t;
    for (std::size_t n : sizes) t.push_back(run(n));
    detail += std::string(detail.empty() ? "" : "; ") + name + ":";
    for (std::size_t i = 0; i < sizes.size(); ++i) detail += " " + fmt("%.3g", t[i]) + "s";
    for (std::size_t i = 1; i < t.size(); ++i) {
      const double ratio = t[i] / std::max(t[i - 1], 1e-9);
      detail += " r" + std::to_string(i) + "=" + fmt("%.1f", ratio);
      if (ratio > 30) o.fail(std::string(name) + " ratio " + fmt("%.1f", ratio));
    }
    if (t.back() >= 120) o.fail(std::string(name) + " largest run " + fmt("%.1f", t.back()) + " s");
  };
  series("forest", {100'000, 1'000'000, 10'000'000}, [](std::size_t n) {
    auto g = random_tree(n, 8'000'000 + n);
    std::size_t size = 0;
    const double s = best_of(n < 10'000'000 ? 3 : 1, [&] { size = solve_forest(g).size(); });
    if (size == 0) std::abort();
    return s;
  });
  series("block", {10'000, 100'000, 1'000'000}, [](std::size_t n) {
    auto g = random_block_graph(n, 5, 8'100'000 + n, {1, 9});
    return best_of(n < 1'000'000 ? 3 : 1, [&] { (void)solve_block_graph(g); });
  });
  series("treewidth", {1'000, 10'000, 100'000}, [](std::size_t n) {
    auto pk = random_partial_ktree(n, 3, 0.3, 8'200'000 + n, {1, 9});
    auto ntd = make_nice(pk.decomposition);
    TreewidthOptions opt;
    opt.weight_only = true;
    return best_of(n < 100'000 ? 3 : 1, [&] { (void)solve_treewidth(pk.graph, ntd, opt); });
  });
  o.detail = detail;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto want = [&](int id) { return only.empty() || only.count(id); };
  bool ok = true;
  auto run = [&](int id, const char* title, const std::function<Outcome()>& f) {
    if (!want(id)) return;
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    report(id, title, o);
    ok = ok && o.pass;
  };
  ReductionStats red;
  run(1, "forest solver equals brute force on random trees", criterion1);
  run(2, "closed forms for full k-ary trees", criterion2);
  run(3, "block solver equals brute force on weighted block graphs", criterion3);
  run(4, "treewidth solver equals brute force on partial k-trees", criterion4);
  run(5, "cross-solver consistency", criterion5);
  if (want(6) || want(7)) {
    // criterion 7 reports ratios on the reduction instances built here
    Outcome o6;
    try {
      o6 = criterion6(red);
    } catch (const std::exception& e) {
      o6.fail(std::string("exception: ") + e.what());
    }
    if (want(6)) {
      report(6, "vertex cover reduction soundness", o6);
      ok = ok && o6.pass;
    }
  }
  run(7, "approximation within 4 x optimum", [&] { return criterion7(red); });
  run(8, "linear scaling", criterion8);
  return ok ? 0 : 1;
}
