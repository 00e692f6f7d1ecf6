// clawfree: command-line front end.
//
// Exit codes: 0 solved exactly (or check passed), 2 approximate answer only,
// 1 error or failed check.

#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include <CLI11.hpp>
#include <json.hpp>

#include "clawfree/clawfree.hpp"

using namespace clawfree;
using nlohmann::json;

namespace {

constexpr int kExact = 0, kError = 1, kApprox = 2;

std::optional<GraphFormat> format_of(const std::string& s) {
  if (s == "auto") return std::nullopt;
  if (s == "edgelist") return GraphFormat::EdgeList;
  if (s == "dimacs") return GraphFormat::Dimacs;
  throw InvalidInput("unknown format '" + s + "' (auto, edgelist, dimacs)");
}

WeightedGraph load(const std::string& path, const std::string& format) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    const std::string text = ss.str();
    return parse_graph(text, format_of(format).value_or(detect_format(text)));
  }
  return read_graph_file(path, format_of(format));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::vector<Vertex> vertices_by_label(const WeightedGraph& g, const std::vector<std::string>& names) {
  std::unordered_map<std::string, Vertex> index;
  for (Vertex v = 0; v < g.num_vertices(); ++v) index.emplace(g.label(v), v);
  std::vector<Vertex> out;
  for (const auto& s : names) {
    auto it = index.find(s);
    if (it == index.end()) throw InvalidInput("unknown vertex '" + s + "'");
    out.push_back(it->second);
  }
  return out;
}

// A solution file is either a JSON report (its "vertices" array) or labels
// separated by whitespace or commas.
std::vector<std::string> read_solution_labels(const std::string& path) {
  std::string text = read_text_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  std::vector<std::string> names;
  if (first != std::string::npos && text[first] == '{') {
    json j = json::parse(text);
    if (!j.contains("vertices") || !j["vertices"].is_array())
      throw InvalidInput("solution JSON has no \"vertices\" array");
    for (const auto& v : j["vertices"]) names.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    return names;
  }
  for (char& c : text)
    if (c == ',') c = ' ';
  std::istringstream in(text);
  for (std::string tok; in >> tok;) names.push_back(tok);
  return names;
}

struct SolveArgs {
  std::string file, format = "auto", cls = "auto", td, dump_tables;
  bool weight_only = false, as_json = false;
  std::uint64_t budget = 5'000'000;
  std::size_t width_cap = 10, max_states = 20'000'000;
};

int run_solve(const SolveArgs& a, bool approx_only) {
  WeightedGraph g = load(a.file, a.format);
  DispatchOptions opt;
  auto cls = solver_class_from_string(approx_only ? "approx" : a.cls);
  if (!cls) throw InvalidInput("unknown class '" + a.cls + "'");
  opt.forced = *cls;
  opt.weight_only = a.weight_only;
  opt.oracle_budget = a.budget;
  opt.width_cap = a.width_cap;
  opt.max_states = a.max_states;
  TreeDecomposition td;
  if (!a.td.empty()) {
    td = parse_td(read_text_file(a.td), g);
    opt.td = &td;
    if (opt.forced == SolverClass::Auto) opt.forced = SolverClass::Treewidth;
    if (opt.forced != SolverClass::Treewidth) throw InvalidInput("--td only applies to the treewidth solver");
  }
  if (!a.dump_tables.empty()) {
    if (!is_connected(g) || !is_block_graph(g)) throw InvalidInput("--dump-tables needs a connected block graph");
    auto bct = block_cutpoint_tree(g);
    std::ostringstream os;
    if (bct.trivial()) os << "# complete graph: no cutpoints, optimum 0\n";
    else write_block_tables(os, compute_block_tables(bct, g), bct, g);
    write_text(a.dump_tables, os.str());
  }
  SolveReport rep = dispatch(g, opt, a.file);
  if (a.as_json) std::cout << to_json(rep).dump(2) << '\n';
  else write_report(std::cout, rep);
  if (rep.verified == false) {
    std::cerr << "error: reported set does not verify\n";
    return kError;
  }
  return rep.exact ? kExact : kApprox;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum (weighted) claw-free vertex deletion"};
  app.require_subcommand(1);
  int code = kExact;

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve an instance exactly (auto-detected or forced class)");
  solve->add_option("graph", sa.file, "Graph file (edge list or DIMACS, '-' for stdin)")->required();
  solve->add_option("--format", sa.format, "auto, edgelist or dimacs");
  solve->add_option("--class", sa.cls, "auto, forest, block, treewidth, oracle or approx");
  solve->add_option("--td", sa.td, "Tree decomposition in PACE .td format");
  solve->add_flag("--weight-only", sa.weight_only, "Treewidth solver: report the optimum without a set");
  solve->add_flag("--json", sa.as_json, "JSON report");
  solve->add_option("--budget", sa.budget, "Search-node budget of the oracle");
  solve->add_option("--width-cap", sa.width_cap, "Largest heuristic width routed to the treewidth solver");
  solve->add_option("--max-states", sa.max_states, "State limit per decomposition node");
  solve->add_option("--dump-tables", sa.dump_tables, "Write block-graph DP tables (TSV)");
  solve->callback([&] { code = run_solve(sa, false); });

  SolveArgs aa;
  auto* approx = app.add_subcommand("approx", "Local-ratio 4-approximation");
  approx->add_option("graph", aa.file, "Graph file")->required();
  approx->add_option("--format", aa.format, "auto, edgelist or dimacs");
  approx->add_flag("--json", aa.as_json, "JSON report");
  approx->callback([&] { code = run_solve(aa, true); });

  std::string vfile, vsol, vset, vformat = "auto";
  auto* verify = app.add_subcommand("verify", "Check that deleting a set leaves a claw-free graph");
  verify->add_option("graph", vfile, "Graph file")->required();
  auto* vs_file = verify->add_option("solution", vsol, "Labels (whitespace/comma separated) or a JSON report");
  auto* vs_set = verify->add_option("--set", vset, "Comma-separated labels");
  vs_file->excludes(vs_set);
  verify->add_option("--format", vformat, "auto, edgelist or dimacs");
  verify->callback([&] {
    WeightedGraph g = load(vfile, vformat);
    std::vector<std::string> names;
    if (!vsol.empty()) {
      names = read_solution_labels(vsol);
    } else {
      std::string s = vset;
      for (char& c : s)
        if (c == ',') c = ' ';
      std::istringstream in(s);
      for (std::string tok; in >> tok;) names.push_back(tok);
    }
    auto set = vertices_by_label(g, names);
    VertexSet vs(g.num_vertices());
    for (Vertex v : set) vs.insert(v);
    if (auto w = find_claw_after_deletion(g, vs)) {
      std::cout << "invalid: claw with center " << g.label(w->center) << " and leaves " << g.label(w->leaves[0])
                << ' ' << g.label(w->leaves[1]) << ' ' << g.label(w->leaves[2]) << '\n';
      code = kError;
      return;
    }
    std::cout << "valid: " << vs.size() << " vertices, weight " << g.weight_of(vs.members()) << '\n';
  });

  std::string family = "tree", gout, gformat = "edgelist";
  GenParams gp;
  unsigned height = 3;
  Weight wmin = 1, wmax = 1;
  auto* gen = app.add_subcommand("gen", "Generate an instance (plus a JSON sidecar when -o is given)");
  gen->add_option("--family", family, "tree, block, partial-ktree, split or kary");
  gen->add_option("-n,--n", gp.n, "Number of vertices");
  gen->add_option("-k,--k", gp.k, "block: max clique; partial-ktree: k; split: clique size; kary: arity");
  gen->add_option("-p,--p", gp.p, "partial-ktree: edge deletion rate; split: cross-edge probability");
  gen->add_option("--height", height, "kary: height");
  gen->add_option("--seed", gp.seed, "Random seed");
  gen->add_option("--wmin", wmin, "Smallest vertex weight");
  gen->add_option("--wmax", wmax, "Largest vertex weight");
  gen->add_option("-o,--output", gout, "Output file (stdout when omitted)");
  gen->add_option("--out-format", gformat, "edgelist or dimacs");
  gen->callback([&] {
    json side;
    side["family"] = family;
    side["seed"] = gp.seed;
    WeightedGraph g;
    std::optional<Weight> known;
    if (family == "kary") {
      g = gen_full_kary(gp.k, height);
      side["params"] = {{"k", gp.k}, {"height", height}};
      known = static_cast<Weight>(cdn_full_tree(gp.k, height));
      side["optimum_source"] = "closed form";
    } else {
      auto f = family_from_string(family);
      if (!f) throw InvalidInput("unknown family '" + family + "'");
      gp.family = *f;
      gp.weights = {wmin, wmax};
      g = gen_random(gp);
      side["params"] = {{"n", gp.n}, {"k", gp.k}, {"p", gp.p}, {"wmin", wmin}, {"wmax", wmax}};
      if (gp.family == Family::Tree || gp.family == Family::Block) {
        known = gp.family == Family::Tree && g.unit_weights() ? static_cast<Weight>(solve_forest(g).size())
                                                              : solve_block_graph(g).weight;
        side["optimum_source"] = gp.family == Family::Tree && g.unit_weights() ? "forest" : "block";
      }
    }
    side["n"] = g.num_vertices();
    side["m"] = g.num_edges();
    side["known_optimum"] = known ? json(*known) : json(nullptr);
    const auto fmt = format_of(gformat).value_or(GraphFormat::EdgeList);
    if (gout.empty()) {
      write_graph(std::cout, g, fmt);
      return;
    }
    write_text(gout, serialize_graph(g, fmt));
    write_json(gout + ".json", side);
  });

  std::string rfrom = "vc", rfile, rout, rformat = "auto";
  std::optional<Weight> rweight;
  auto* reduce = app.add_subcommand("reduce", "Vertex cover instance to a claw-deletion split graph");
  reduce->add_option("--from", rfrom, "Source problem (vc)");
  reduce->add_option("graph", rfile, "Source graph")->required();
  reduce->add_option("-o,--output", rout, "Output file (stdout when omitted)");
  reduce->add_option("--clique-weight", rweight, "Weight of every clique-side vertex");
  reduce->add_option("--format", rformat, "auto, edgelist or dimacs");
  reduce->callback([&] {
    if (rfrom != "vc") throw InvalidInput("only --from vc is supported");
    WeightedGraph src = load(rfile, rformat);
    ReductionMap r = vc_to_split(src, rweight);
    if (rout.empty()) {
      write_graph(std::cout, r.graph, GraphFormat::EdgeList);
      return;
    }
    write_text(rout, serialize_graph(r.graph, GraphFormat::EdgeList));
    json side;
    side["family"] = "vc-reduction";
    side["source"] = rfile;
    side["source_n"] = src.num_vertices();
    side["source_m"] = src.num_edges();
    side["n"] = r.graph.num_vertices();
    side["m"] = r.graph.num_edges();
    side["clique_parts"] = r.clique_parts.size();
    side["part_size"] = r.clique_parts.front().size();
    side["known_optimum"] = nullptr;
    side["note"] = "optimum equals the minimum vertex cover of the source";
    write_json(rout + ".json", side);
  });

  std::string dfile, dout, dformat = "auto";
  std::optional<std::size_t> dmax;
  auto* decompose = app.add_subcommand("decompose", "Min-fill tree decomposition in PACE .td format");
  decompose->add_option("graph", dfile, "Graph file")->required();
  decompose->add_option("-o,--output", dout, "Output file (stdout when omitted)");
  decompose->add_option("--max-width", dmax, "Fail when the width would exceed this");
  decompose->add_option("--format", dformat, "auto, edgelist or dimacs");
  decompose->callback([&] {
    WeightedGraph g = load(dfile, dformat);
    auto td = heuristic_decomposition(g, dmax);
    if (!td) throw ResourceError("heuristic width exceeds " + std::to_string(*dmax));
    std::ostringstream os;
    write_td(os, *td, g.num_vertices());
    if (dout.empty()) std::cout << os.str();
    else write_text(dout, os.str());
    std::cerr << "width " << td->width() << ", " << td->num_bags() << " bags\n";
  });

  std::string fkind;
  std::uint64_t fk = 2;
  std::optional<unsigned> fh;
  std::optional<std::uint64_t> fn;
  auto* formula = app.add_subcommand("formula", "Closed-form optimum of full k-ary trees");
  formula->add_option("kind", fkind, "kary")->required();
  formula->add_option("--k", fk, "Arity (2 = binary)");
  auto* fh_opt = formula->add_option("--height", fh, "Height");
  auto* fn_opt = formula->add_option("--n", fn, "Number of vertices");
  fh_opt->excludes(fn_opt);
  formula->callback([&] {
    if (fkind != "kary") throw InvalidInput("unknown formula '" + fkind + "'");
    if (!fh && !fn) throw InvalidInput("give --height or --n");
    std::uint64_t n = 0, c = 0;
    if (fh) {
      n = full_kary_size(fk, *fh);
      c = cdn_full_tree(fk, *fh);
    } else {
      n = *fn;
      c = fk == 2 ? cdn_full_binary(n) : cdn_full_kary(fk, n);
    }
    std::cout << "k=" << fk << " n=" << n << " cdn=" << c;
    if (fh) {
      const Rational r = deletion_fraction(fk, *fh);
      std::cout << " fraction=" << r.num << '/' << r.den;
    }
    std::cout << '\n';
  });

  std::string bdir, bout, bcls = "auto";
  std::size_t reps = 3;
  bool bweight_only = false;
  auto* benchc = app.add_subcommand("bench", "Time every instance of a directory; CSV output");
  benchc->add_option("dir", bdir, "Corpus directory")->required();
  benchc->add_option("--reps", reps, "Repetitions per instance");
  benchc->add_option("--class", bcls, "Solver class");
  benchc->add_flag("--weight-only", bweight_only, "Treewidth solver without reconstruction");
  benchc->add_option("-o,--output", bout, "CSV file (stdout when omitted)");
  benchc->callback([&] {
    DispatchOptions opt;
    auto c = solver_class_from_string(bcls);
    if (!c) throw InvalidInput("unknown class '" + bcls + "'");
    opt.forced = *c;
    opt.weight_only = bweight_only;
    auto rows = bench(bdir, reps, opt, std::cerr);
    std::ostringstream os;
    write_bench_csv(os, rows);
    if (bout.empty()) std::cout << os.str();
    else write_text(bout, os.str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return code;
}
