#pragma once

// Text formats for WeightedGraph.
//
// Edge list
//   # comment                 (also allowed after data on a line)
//   n m                       optional header, see below
//   v <id> <weight>           vertex declaration with weight
//   <u> <v>                   edge
//
// The first data line is a header when it holds exactly two unsigned
// integers, `m` equals the number of edge lines that follow it and the
// vertices that follow fit `n`. When every vertex token is an unsigned
// integer (and below `n` if a header is present), tokens are 0-based indices.
// Otherwise tokens are labels, numbered in order of first appearance, and the
// label table is kept on the graph.
//
// DIMACS
//   c comment
//   p <kind> <n> <m>
//   e <u> <v>                 1-based
//   n <u> <weight>            1-based
//
// The serializers emit the same layouts with canonical ordering, so
// parse(serialize(g)) == g.

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "clawfree/graph.hpp"

namespace clawfree {

enum class GraphFormat { EdgeList, Dimacs };

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class Int>
std::optional<Int> parse_int(std::string_view tok) {
  Int value{};
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || p != tok.data() + tok.size()) return std::nullopt;
  return value;
}

inline std::uint64_t edge_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (std::uint64_t{u} << 32) | v;
}

inline WeightedGraph parse_edge_list(std::istream& in) {
  struct Record {
    std::size_t line;
    bool vertex_line;
    std::string a, b;
    Weight w = 1;
  };
  std::vector<Record> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    auto tok = split_tokens(view);
    if (tok.empty()) continue;
    if (tok[0] == "v") {
      if (tok.size() != 3) throw ParseError(lineno, "expected 'v <id> <weight>'");
      auto w = parse_int<Weight>(tok[2]);
      if (!w) throw ParseError(lineno, "weight is not an integer");
      if (*w <= 0) throw ParseError(lineno, "weight must be positive");
      records.push_back({lineno, true, std::string(tok[1]), {}, *w});
    } else {
      if (tok.size() != 2) throw ParseError(lineno, "expected '<u> <v>'");
      records.push_back({lineno, false, std::string(tok[0]), std::string(tok[1])});
    }
  }

  std::optional<std::size_t> header_n;
  std::size_t first = 0;
  if (!records.empty() && !records[0].vertex_line) {
    auto hn = parse_int<std::uint64_t>(records[0].a);
    auto hm = parse_int<std::uint64_t>(records[0].b);
    if (hn && hm) {
      std::size_t edges_after = 0;
      for (std::size_t i = 1; i < records.size(); ++i) edges_after += !records[i].vertex_line;
      // Also require the rest of the file to fit n, so "0 1" followed by
      // one edge stays an edge.
      bool fits = *hm == edges_after;
      bool all_int = true;
      std::unordered_set<std::string> names;
      for (std::size_t i = 1; i < records.size() && fits; ++i)
        for (const std::string* t : {&records[i].a, &records[i].b}) {
          if (records[i].vertex_line && t == &records[i].b) continue;
          auto id = parse_int<std::uint64_t>(*t);
          all_int = all_int && id.has_value();
          if (id && *id >= *hn) fits = false;
          names.insert(*t);
        }
      if (fits && !all_int) fits = names.size() == *hn;
      if (fits) {
        header_n = *hn;
        first = 1;
      }
    }
  }

  bool integer_ids = true;
  std::uint64_t max_id = 0;
  bool any_id = false;
  for (std::size_t i = first; i < records.size() && integer_ids; ++i) {
    const auto& r = records[i];
    for (const std::string* t : {&r.a, &r.b}) {
      if (r.vertex_line && t == &r.b) continue;
      auto id = parse_int<std::uint64_t>(*t);
      if (!id || (header_n && *id >= *header_n)) {
        integer_ids = false;
        break;
      }
      max_id = std::max(max_id, *id);
      any_id = true;
    }
  }

  std::vector<Vertex> index_a(records.size()), index_b(records.size());
  std::vector<std::string> labels;
  std::size_t n = 0;
  if (integer_ids) {
    n = header_n ? *header_n : (any_id ? max_id + 1 : 0);
    if (n >= kNoVertex) throw ParseError(0, "vertex count too large");
    for (std::size_t i = first; i < records.size(); ++i) {
      index_a[i] = static_cast<Vertex>(*parse_int<std::uint64_t>(records[i].a));
      if (!records[i].vertex_line)
        index_b[i] = static_cast<Vertex>(*parse_int<std::uint64_t>(records[i].b));
    }
  } else {
    std::unordered_map<std::string, Vertex> ids;
    auto intern = [&](const std::string& name) {
      auto [it, fresh] = ids.try_emplace(name, static_cast<Vertex>(labels.size()));
      if (fresh) labels.push_back(name);
      return it->second;
    };
    for (std::size_t i = first; i < records.size(); ++i) {
      index_a[i] = intern(records[i].a);
      if (!records[i].vertex_line) index_b[i] = intern(records[i].b);
    }
    n = labels.size();
    if (header_n && *header_n != n)
      throw ParseError(records[0].line, "header declares " + std::to_string(*header_n) +
                                            " vertices but the file names " + std::to_string(n));
  }

  GraphBuilder builder(n);
  std::unordered_set<std::uint64_t> seen_edges;
  std::vector<bool> weighted(n, false);
  for (std::size_t i = first; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.vertex_line) {
      if (weighted[index_a[i]]) throw ParseError(r.line, "vertex '" + r.a + "' declared twice");
      weighted[index_a[i]] = true;
      builder.set_weight(index_a[i], r.w);
      continue;
    }
    Vertex u = index_a[i], v = index_b[i];
    if (u == v) throw ParseError(r.line, "self-loop at '" + r.a + "'");
    if (!seen_edges.insert(edge_key(u, v)).second)
      throw ParseError(r.line, "duplicate edge '" + r.a + "' '" + r.b + "'");
    builder.add_edge(u, v);
  }
  if (!integer_ids) builder.set_labels(std::move(labels));
  return std::move(builder).build();
}

inline WeightedGraph parse_dimacs(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<GraphBuilder> builder;
  std::size_t n = 0;
  std::unordered_set<std::uint64_t> seen_edges;
  std::vector<bool> weighted;
  auto vertex_arg = [&](std::string_view tok) -> Vertex {
    auto id = parse_int<std::uint64_t>(tok);
    if (!id) throw ParseError(lineno, "vertex '" + std::string(tok) + "' is not an integer");
    if (*id < 1 || *id > n)
      throw ParseError(lineno, "vertex " + std::string(tok) + " outside 1.." + std::to_string(n));
    return static_cast<Vertex>(*id - 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = split_tokens(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (builder) throw ParseError(lineno, "second problem line");
      if (tok.size() != 4) throw ParseError(lineno, "expected 'p <kind> <n> <m>'");
      auto pn = parse_int<std::uint64_t>(tok[2]);
      auto pm = parse_int<std::uint64_t>(tok[3]);
      if (!pn || !pm) throw ParseError(lineno, "vertex/edge counts must be integers");
      if (*pn >= kNoVertex) throw ParseError(lineno, "vertex count too large");
      n = *pn;
      builder.emplace(n);
      weighted.assign(n, false);
      seen_edges.reserve(*pm);
    } else if (tok[0] == "e") {
      if (!builder) throw ParseError(lineno, "edge before problem line");
      if (tok.size() != 3) throw ParseError(lineno, "expected 'e <u> <v>'");
      Vertex u = vertex_arg(tok[1]), v = vertex_arg(tok[2]);
      if (u == v) throw ParseError(lineno, "self-loop at " + std::string(tok[1]));
      if (!seen_edges.insert(edge_key(u, v)).second)
        throw ParseError(lineno, "duplicate edge " + std::string(tok[1]) + " " + std::string(tok[2]));
      builder->add_edge(u, v);
    } else if (tok[0] == "n") {
      if (!builder) throw ParseError(lineno, "weight before problem line");
      if (tok.size() != 3) throw ParseError(lineno, "expected 'n <u> <weight>'");
      Vertex u = vertex_arg(tok[1]);
      auto w = parse_int<Weight>(tok[2]);
      if (!w) throw ParseError(lineno, "weight is not an integer");
      if (*w <= 0) throw ParseError(lineno, "weight must be positive");
      if (weighted[u]) throw ParseError(lineno, "vertex " + std::string(tok[1]) + " weighted twice");
      weighted[u] = true;
      builder->set_weight(u, *w);
    } else {
      throw ParseError(lineno, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!builder) throw ParseError(0, "missing problem line");
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i + 1);
  builder->set_labels(std::move(labels));
  return std::move(*builder).build();
}

}  // namespace detail

inline WeightedGraph parse_graph(std::istream& in, GraphFormat format) {
  return format == GraphFormat::Dimacs ? detail::parse_dimacs(in) : detail::parse_edge_list(in);
}

inline WeightedGraph parse_graph(std::string_view text, GraphFormat format) {
  std::istringstream in{std::string(text)};
  return parse_graph(in, format);
}

/// DIMACS when some line starts with the token "p", edge list otherwise.
inline GraphFormat detect_format(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto tok = detail::split_tokens(text.substr(pos, end - pos));
    if (!tok.empty() && tok[0] == "p") return GraphFormat::Dimacs;
    pos = end + 1;
  }
  return GraphFormat::EdgeList;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Reads a graph file; the format is detected from content when not given.
inline WeightedGraph read_graph_file(const std::string& path,
                                     std::optional<GraphFormat> format = std::nullopt) {
  std::string text = read_text_file(path);
  return parse_graph(text, format.value_or(detect_format(text)));
}

inline void write_graph(std::ostream& out, const WeightedGraph& g, GraphFormat format) {
  const std::size_t n = g.num_vertices();
  if (format == GraphFormat::Dimacs) {
    out << "p edge " << n << ' ' << g.num_edges() << '\n';
    for (Vertex v = 0; v < n; ++v)
      if (g.weight(v) != 1) out << "n " << v + 1 << ' ' << g.weight(v) << '\n';
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v : g.neighbors(u))
        if (u < v) out << "e " << u + 1 << ' ' << v + 1 << '\n';
    return;
  }
  // Labels that coincide with indices are dropped so the file stays in index mode.
  bool identity = true;
  for (Vertex v = 0; v < n && identity; ++v) identity = g.label(v) == std::to_string(v);
  out << n << ' ' << g.num_edges() << '\n';
  for (Vertex v = 0; v < n; ++v)
    if (!identity || g.weight(v) != 1) out << "v " << g.label(v) << ' ' << g.weight(v) << '\n';
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(u))
      if (u < v) out << g.label(u) << ' ' << g.label(v) << '\n';
}

inline std::string serialize_graph(const WeightedGraph& g, GraphFormat format) {
  std::ostringstream out;
  write_graph(out, g, format);
  return out.str();
}

}  // namespace clawfree
