#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "clawfree/baselines.hpp"
#include "clawfree/block_solver.hpp"
#include "clawfree/claw.hpp"
#include "clawfree/forest.hpp"
#include "clawfree/graph.hpp"
#include "clawfree/graph_io.hpp"
#include "clawfree/treewidth_solver.hpp"

namespace clawfree {

enum class SolverClass { Auto, Forest, Block, Treewidth, Oracle, Approx };

inline std::optional<SolverClass> solver_class_from_string(std::string_view s) {
  if (s == "auto") return SolverClass::Auto;
  if (s == "forest") return SolverClass::Forest;
  if (s == "block") return SolverClass::Block;
  if (s == "treewidth" || s == "tw") return SolverClass::Treewidth;
  if (s == "oracle") return SolverClass::Oracle;
  if (s == "approx") return SolverClass::Approx;
  return std::nullopt;
}

inline const char* to_string(SolverClass c) {
  switch (c) {
    case SolverClass::Auto: return "auto";
    case SolverClass::Forest: return "forest";
    case SolverClass::Block: return "block";
    case SolverClass::Treewidth: return "treewidth";
    case SolverClass::Oracle: return "oracle";
    case SolverClass::Approx: return "approx";
  }
  return "?";
}

struct DispatchOptions {
  SolverClass forced = SolverClass::Auto;
  std::size_t width_cap = 10;
  /// Components up to this size fall back to the exact oracle.
  std::size_t oracle_max_vertices = 40;
  std::uint64_t oracle_budget = 5'000'000;
  bool weight_only = false;
  /// Decomposition of the whole graph, used by the treewidth solver.
  const TreeDecomposition* td = nullptr;
  std::size_t max_states = 20'000'000;
};

struct SolveReport {
  std::string instance;
  std::string graph_class;  // requested class, or the classes used by auto
  std::string solver;       // solvers used, '+'-joined in a fixed order
  bool exact = true;
  bool has_set = true;
  Weight weight = 0;
  std::vector<Vertex> vertices;
  std::vector<std::string> labels;
  std::optional<bool> verified;
  std::optional<long> width;
  std::size_t components = 0;
  double seconds = 0;
};

namespace detail {

struct ComponentResult {
  Solution solution;
  SolverClass used;
  std::optional<long> width;
};

inline ComponentResult solve_with(const WeightedGraph& g, SolverClass c, const DispatchOptions& opt) {
  switch (c) {
    case SolverClass::Forest:
      if (!g.unit_weights()) throw InvalidInput("the forest solver is unweighted; use --class block for weighted trees");
      return {solve_forest(g), c, std::nullopt};
    case SolverClass::Block:
      return {solve_block_graph(g), c, std::nullopt};
    case SolverClass::Treewidth: {
      TreewidthOptions to;
      to.weight_only = opt.weight_only;
      to.max_states = opt.max_states;
      NiceTreeDecomposition ntd;
      if (opt.td) {
        validate_decomposition(*opt.td, g);
        ntd = make_nice(*opt.td);
      } else {
        auto td = heuristic_decomposition(g, kMaxTreewidth);
        if (!td) throw ResourceError("heuristic decomposition is wider than " + std::to_string(kMaxTreewidth));
        ntd = make_nice(*td);
      }
      to.validate = false;
      return {solve_treewidth(g, ntd, to), c, ntd.width()};
    }
    case SolverClass::Oracle: {
      BruteForceOptions bo;
      bo.node_budget = opt.oracle_budget;
      return {brute_force_min(g, bo), c, std::nullopt};
    }
    case SolverClass::Approx:
      return {greedy_4_approx(g), c, std::nullopt};
    case SolverClass::Auto: break;
  }
  throw std::logic_error("solve_with: auto is not a solver");
}

// Auto routing for one connected component.
inline ComponentResult solve_auto(const WeightedGraph& g, const DispatchOptions& opt) {
  if (g.unit_weights() && is_tree(g)) return solve_with(g, SolverClass::Forest, opt);
  if (is_block_graph(g)) return solve_with(g, SolverClass::Block, opt);
  if (auto td = heuristic_decomposition(g, std::min(opt.width_cap, kMaxTreewidth))) {
    DispatchOptions o = opt;
    o.td = &*td;
    try {
      return solve_with(g, SolverClass::Treewidth, o);
    } catch (const ResourceError&) {
      // state budget: fall through to the oracle / approximation
    }
  }
  if (g.num_vertices() <= opt.oracle_max_vertices) {
    try {
      return solve_with(g, SolverClass::Oracle, opt);
    } catch (const ResourceError&) {
    }
  }
  return solve_with(g, SolverClass::Approx, opt);
}

}  // namespace detail

/// Solves g component by component (or as a whole for a forced class other
/// than block) and certifies the union.
inline SolveReport dispatch(const WeightedGraph& g, const DispatchOptions& opt = {}, std::string instance = {}) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.instance = std::move(instance);
  std::vector<detail::ComponentResult> parts;
  std::vector<std::vector<Vertex>> maps;

  const bool whole = opt.forced == SolverClass::Forest || opt.forced == SolverClass::Treewidth ||
                     opt.forced == SolverClass::Oracle || opt.forced == SolverClass::Approx;
  if (whole) {
    parts.push_back(detail::solve_with(g, opt.forced, opt));
    maps.emplace_back();
    rep.components = connected_components(g).size();
  } else {
    auto comps = connected_components(g);
    rep.components = comps.size();
    for (auto& comp : comps) {
      if (comp.size() < 4) continue;  // a claw needs four vertices
      if (comps.size() == 1) {
        parts.push_back(opt.forced == SolverClass::Auto ? detail::solve_auto(g, opt)
                                                        : detail::solve_with(g, opt.forced, opt));
        maps.emplace_back();
        break;
      }
      auto sub = induced_subgraph(g, comp);
      parts.push_back(opt.forced == SolverClass::Auto ? detail::solve_auto(sub.graph, opt)
                                                      : detail::solve_with(sub.graph, opt.forced, opt));
      maps.push_back(std::move(sub.original));
    }
  }

  std::vector<bool> used(6, false);
  std::vector<Vertex> all;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    used[static_cast<std::size_t>(p.used)] = true;
    rep.weight = detail::checked_add(rep.weight, p.solution.weight);
    if (!p.solution.has_set) rep.has_set = false;
    if (p.used == SolverClass::Approx) rep.exact = false;
    if (p.width) rep.width = std::max(rep.width.value_or(-1), *p.width);
    for (Vertex v : p.solution.vertices) all.push_back(maps[i].empty() ? v : maps[i][v]);
  }
  for (std::size_t c = 1; c < used.size(); ++c)
    if (used[c]) rep.solver += (rep.solver.empty() ? "" : "+") + std::string(to_string(static_cast<SolverClass>(c)));
  if (rep.solver.empty()) rep.solver = "trivial";
  rep.graph_class = opt.forced == SolverClass::Auto ? rep.solver : to_string(opt.forced);

  if (rep.has_set) {
    std::sort(all.begin(), all.end());
    rep.vertices = std::move(all);
    for (Vertex v : rep.vertices) rep.labels.push_back(g.label(v));
    if (g.weight_of(rep.vertices) != rep.weight) throw std::logic_error("dispatch: weight mismatch");
    rep.verified = verify_solution(g, rep.vertices);
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline nlohmann::json to_json(const SolveReport& r) {
  nlohmann::json j;
  j["instance"] = r.instance;
  j["class"] = r.graph_class;
  j["solver"] = r.solver;
  j["exact"] = r.exact;
  j["weight"] = r.weight;
  j["components"] = r.components;
  if (r.has_set) {
    j["size"] = r.vertices.size();
    j["vertices"] = r.labels;
  } else {
    j["size"] = nullptr;
    j["vertices"] = nullptr;
  }
  j["verified"] = r.verified ? nlohmann::json(*r.verified) : nlohmann::json(nullptr);
  j["width"] = r.width ? nlohmann::json(*r.width) : nlohmann::json(nullptr);
  j["seconds"] = r.seconds;
  return j;
}

inline void write_report(std::ostream& os, const SolveReport& r) {
  if (!r.exact) os << "APPROXIMATE: no exact solver applied; weight is within a factor 4 of optimal\n";
  if (!r.instance.empty()) os << "instance: " << r.instance << '\n';
  os << "solver:   " << r.solver << '\n';
  if (r.width) os << "width:    " << *r.width << '\n';
  os << "weight:   " << r.weight << '\n';
  if (r.has_set) {
    os << "size:     " << r.vertices.size() << '\n' << "vertices:";
    for (const auto& l : r.labels) os << ' ' << l;
    os << '\n';
  }
  os << "verified: " << (r.verified ? (*r.verified ? "yes" : "NO") : "n/a (weight only)") << '\n';
  os << "time:     " << r.seconds << " s\n";
}

struct BenchRow {
  std::string file;
  std::size_t n = 0, m = 0;
  std::string solver;
  Weight weight = 0;
  std::optional<bool> verified;
  double median_seconds = 0, min_seconds = 0;
  std::size_t repetitions = 0;
};

/// Solves every regular file of `corpus` (sorted by name) `reps` times.
/// Unreadable or malformed files are reported to `warnings` and skipped.
inline std::vector<BenchRow> bench(const std::filesystem::path& corpus, std::size_t reps, const DispatchOptions& opt,
                                   std::ostream& warnings) {
  namespace fs = std::filesystem;
  if (reps == 0) throw InvalidInput("bench: repetitions must be positive");
  if (!fs::is_directory(corpus)) throw InvalidInput("bench: " + corpus.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(corpus))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InvalidInput("bench: " + corpus.string() + " contains no files");
  std::vector<BenchRow> rows;
  for (const auto& f : files) {
    WeightedGraph g;
    try {
      g = read_graph_file(f.string());
    } catch (const Error& e) {
      warnings << "warning: skipping " << f.filename().string() << ": " << e.what() << '\n';
      continue;
    }
    BenchRow row;
    row.file = f.filename().string();
    row.n = g.num_vertices();
    row.m = g.num_edges();
    row.repetitions = reps;
    std::vector<double> times;
    for (std::size_t r = 0; r < reps; ++r) {
      SolveReport rep = dispatch(g, opt, row.file);
      times.push_back(rep.seconds);
      row.solver = rep.solver;
      row.weight = rep.weight;
      row.verified = rep.verified;
    }
    std::sort(times.begin(), times.end());
    row.min_seconds = times.front();
    row.median_seconds = times.size() % 2 ? times[times.size() / 2]
                                          : (times[times.size() / 2 - 1] + times[times.size() / 2]) / 2;
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidInput("bench: no instance could be read");
  return rows;
}

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "file,n,m,solver,weight,verified,median_s,min_s,reps\n";
  for (const auto& r : rows)
    os << r.file << ',' << r.n << ',' << r.m << ',' << r.solver << ',' << r.weight << ','
       << (r.verified ? (*r.verified ? "true" : "false") : "") << ',' << r.median_seconds << ',' << r.min_seconds
       << ',' << r.repetitions << '\n';
}

}  // namespace clawfree
