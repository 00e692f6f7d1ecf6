#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "clawfree/graph.hpp"
#include "clawfree/graph_io.hpp"

namespace clawfree {

/// Bags over graph vertex indices plus undirected tree edges between bag ids.
struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;  // each sorted, duplicate-free
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  std::size_t num_bags() const noexcept { return bags.size(); }
  std::size_t max_bag_size() const noexcept {
    std::size_t m = 0;
    for (const auto& b : bags) m = std::max(m, b.size());
    return m;
  }
  /// max |X_t| - 1; -1 for an empty decomposition.
  long width() const noexcept { return static_cast<long>(max_bag_size()) - 1; }

  void normalize() {
    for (auto& b : bags) {
      std::sort(b.begin(), b.end());
      b.erase(std::unique(b.begin(), b.end()), b.end());
    }
  }
};

namespace detail {

inline std::size_t common_count(const std::vector<Vertex>& a, const std::vector<Vertex>& b,
                                std::vector<Vertex>* out = nullptr) {
  std::size_t i = 0, j = 0, c = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else {
      if (out) out->push_back(a[i]);
      ++c, ++i, ++j;
    }
  }
  return c;
}

}  // namespace detail

/// Throws InvalidInput naming the first violated condition.
inline void validate_decomposition(const TreeDecomposition& td, const WeightedGraph& g) {
  const std::size_t n = g.num_vertices(), nb = td.num_bags();
  for (const auto& b : td.bags) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] >= n) throw InvalidInput("bag contains vertex index " + std::to_string(b[i]) + " outside the graph");
      if (i && b[i - 1] >= b[i]) throw InvalidInput("bag is not sorted and duplicate-free");
    }
  }
  if (nb == 0) {
    if (n) throw InvalidInput("decomposition has no bags; vertex " + g.label(0) + " is not covered");
    return;
  }
  // tree shape
  if (td.edges.size() != nb - 1) throw InvalidInput("decomposition is not a tree: wrong number of edges");
  std::vector<std::vector<std::uint32_t>> adj(nb);
  for (auto [a, b] : td.edges) {
    if (a >= nb || b >= nb || a == b) throw InvalidInput("decomposition edge refers to a missing bag");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(nb, false);
  std::vector<std::uint32_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (auto y : adj[x])
      if (!seen[y]) seen[y] = true, ++reached, stack.push_back(y);
  }
  if (reached != nb) throw InvalidInput("decomposition is not a tree: bags are disconnected");

  // coverage
  std::vector<std::uint32_t> occurrences(n, 0);
  for (const auto& b : td.bags)
    for (Vertex v : b) ++occurrences[v];
  for (Vertex v = 0; v < n; ++v)
    if (!occurrences[v]) throw InvalidInput("vertex " + g.label(v) + " is not covered by any bag");

  // edges
  std::vector<std::vector<std::uint32_t>> bags_of(n);
  for (std::uint32_t t = 0; t < nb; ++t)
    for (Vertex v : td.bags[t]) bags_of[v].push_back(t);
  for (auto [u, v] : g.edges()) {
    const auto& a = bags_of[u];
    const auto& b = bags_of[v];
    std::size_t i = 0, j = 0;
    bool found = false;
    while (i < a.size() && j < b.size() && !found) {
      if (a[i] < b[j]) ++i;
      else if (b[j] < a[i]) ++j;
      else found = true;
    }
    if (!found)
      throw InvalidInput("edge " + g.label(u) + "-" + g.label(v) + " is not contained in any bag");
  }

  // connectivity: the bags holding v span a subtree iff they carry |T_v|-1 tree edges
  std::vector<std::uint32_t> inner_edges(n, 0);
  std::vector<Vertex> common;
  for (auto [a, b] : td.edges) {
    common.clear();
    detail::common_count(td.bags[a], td.bags[b], &common);
    for (Vertex v : common) ++inner_edges[v];
  }
  for (Vertex v = 0; v < n; ++v)
    if (inner_edges[v] + 1 != occurrences[v])
      throw InvalidInput("bags containing vertex " + g.label(v) + " do not form a connected subtree");
}

/// PACE .td text: "s td <bags> <max bag size> <n>", "b <id> <v>...", "<a> <b>".
/// Bag ids and vertex ids are 1-based; vertex id i is graph index i-1.
inline TreeDecomposition parse_td(std::istream& in, const WeightedGraph& g) {
  TreeDecomposition td;
  std::string line;
  std::size_t lineno = 0, declared_bags = 0, declared_size = 0;
  bool have_header = false;
  std::vector<bool> bag_seen;
  auto number = [&](std::string_view tok) -> std::uint64_t {
    std::uint64_t x = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw ParseError(lineno, "expected a non-negative integer, got '" + std::string(tok) + "'");
    return x;
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = detail::split_tokens(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "s") {
      if (have_header) throw ParseError(lineno, "duplicate solution line");
      if (tok.size() != 5 || tok[1] != "td") throw ParseError(lineno, "expected 's td <bags> <size> <n>'");
      declared_bags = number(tok[2]);
      declared_size = number(tok[3]);
      if (number(tok[4]) != g.num_vertices())
        throw ParseError(lineno, "vertex count does not match the graph");
      td.bags.assign(declared_bags, {});
      bag_seen.assign(declared_bags, false);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "missing 's td' line");
    if (tok[0] == "b") {
      if (tok.size() < 2) throw ParseError(lineno, "bag line without id");
      auto id = number(tok[1]);
      if (id == 0 || id > declared_bags) throw ParseError(lineno, "bag id out of range");
      if (bag_seen[id - 1]) throw ParseError(lineno, "bag " + std::to_string(id) + " defined twice");
      bag_seen[id - 1] = true;
      for (std::size_t i = 2; i < tok.size(); ++i) {
        auto v = number(tok[i]);
        if (v == 0 || v > g.num_vertices()) throw ParseError(lineno, "vertex id out of range");
        td.bags[id - 1].push_back(static_cast<Vertex>(v - 1));
      }
      continue;
    }
    if (tok.size() != 2) throw ParseError(lineno, "expected a tree edge 'a b'");
    auto a = number(tok[0]), b = number(tok[1]);
    if (a == 0 || b == 0 || a > declared_bags || b > declared_bags)
      throw ParseError(lineno, "tree edge refers to an unknown bag");
    td.edges.emplace_back(static_cast<std::uint32_t>(a - 1), static_cast<std::uint32_t>(b - 1));
  }
  if (!have_header) throw ParseError(lineno, "missing 's td' line");
  td.normalize();
  if (td.max_bag_size() != declared_size)
    throw ParseError(lineno, "declared bag size " + std::to_string(declared_size) + " but largest bag has " +
                                 std::to_string(td.max_bag_size()) + " vertices");
  validate_decomposition(td, g);
  return td;
}

inline TreeDecomposition parse_td(std::string_view text, const WeightedGraph& g) {
  std::istringstream in{std::string(text)};
  return parse_td(in, g);
}

inline void write_td(std::ostream& os, const TreeDecomposition& td, std::size_t n) {
  os << "s td " << td.num_bags() << ' ' << td.max_bag_size() << ' ' << n << '\n';
  for (std::size_t t = 0; t < td.num_bags(); ++t) {
    os << "b " << t + 1;
    for (Vertex v : td.bags[t]) os << ' ' << v + 1;
    os << '\n';
  }
  for (auto [a, b] : td.edges) os << a + 1 << ' ' << b + 1 << '\n';
}

/// Min-fill elimination. Returns nullopt as soon as a bag would exceed
/// max_width + 1 vertices.
inline std::optional<TreeDecomposition> heuristic_decomposition(const WeightedGraph& g,
                                                                std::optional<std::size_t> max_width) {
  const std::size_t n = g.num_vertices();
  constexpr std::size_t kExactFillDegree = 200;
  std::vector<std::vector<Vertex>> adj(n);
  std::unordered_set<std::uint64_t> edge_set;
  edge_set.reserve(g.num_edges() * 2 + 16);
  auto key = [](Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return (std::uint64_t{a} << 32) | b;
  };
  std::vector<std::uint32_t> degree(n);
  for (Vertex v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    adj[v].assign(nb.begin(), nb.end());
    degree[v] = static_cast<std::uint32_t>(nb.size());
  }
  for (auto [u, v] : g.edges()) edge_set.insert(key(u, v));
  std::vector<bool> dead(n, false);

  auto live = [&](Vertex v) -> std::vector<Vertex>& {
    auto& row = adj[v];
    row.erase(std::remove_if(row.begin(), row.end(), [&](Vertex u) { return dead[u]; }), row.end());
    return row;
  };
  auto fill_of = [&](Vertex v) -> std::uint64_t {
    const std::uint64_t d = degree[v];
    if (d > kExactFillDegree) return d * (d - 1) / 2;
    const auto& row = live(v);
    std::uint64_t missing = 0;
    for (std::size_t i = 0; i < row.size(); ++i)
      for (std::size_t j = i + 1; j < row.size(); ++j) missing += !edge_set.count(key(row[i], row[j]));
    return missing;
  };

  using Key = std::tuple<std::uint64_t, std::uint32_t, Vertex>;
  std::set<Key> queue;
  std::vector<Key> current(n);
  for (Vertex v = 0; v < n; ++v) {
    current[v] = {fill_of(v), degree[v], v};
    queue.insert(current[v]);
  }

  TreeDecomposition td;
  td.bags.resize(n);
  std::vector<std::uint32_t> position(n);
  std::vector<std::vector<Vertex>> later(n);
  for (std::uint32_t step = 0; step < n; ++step) {
    const Vertex v = std::get<2>(*queue.begin());
    queue.erase(queue.begin());
    position[v] = step;
    auto nb = live(v);  // copy: rows are rewritten below
    if (max_width && nb.size() > *max_width) return std::nullopt;
    dead[v] = true;
    later[v] = nb;
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (edge_set.insert(key(nb[i], nb[j])).second) {
          adj[nb[i]].push_back(nb[j]);
          adj[nb[j]].push_back(nb[i]);
          ++degree[nb[i]];
          ++degree[nb[j]];
        }
    for (Vertex u : nb) {
      --degree[u];
      queue.erase(current[u]);
      current[u] = {fill_of(u), degree[u], u};
      queue.insert(current[u]);
    }
  }

  // bag(v) = {v} + later neighbours; parent = earliest-eliminated of those
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[position[v]] = v;
  Vertex previous_root = kNoVertex;
  for (Vertex v : order) {
    auto& bag = td.bags[v];
    bag = later[v];
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    Vertex parent = kNoVertex;
    for (Vertex u : later[v])
      if (parent == kNoVertex || position[u] < position[parent]) parent = u;
    if (parent != kNoVertex) {
      td.edges.emplace_back(v, parent);
    } else {
      if (previous_root != kNoVertex) td.edges.emplace_back(previous_root, v);
      previous_root = v;
    }
  }
  return td;
}

inline TreeDecomposition heuristic_decomposition(const WeightedGraph& g) {
  return *heuristic_decomposition(g, std::nullopt);
}

enum class NiceKind : std::uint8_t { Leaf, Introduce, Forget, Join };

struct NiceNode {
  NiceKind kind = NiceKind::Leaf;
  Vertex vertex = kNoVertex;  // introduced / forgotten vertex
  std::uint32_t left = kNoNode32, right = kNoNode32;
  std::vector<Vertex> bag;  // sorted

  static constexpr std::uint32_t kNoNode32 = std::numeric_limits<std::uint32_t>::max();
};

/// Rooted nice decomposition; every child has a smaller index than its
/// parent and the root is the last node.
struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;

  std::uint32_t root() const { return static_cast<std::uint32_t>(nodes.size() - 1); }
  std::size_t max_bag_size() const noexcept {
    std::size_t m = 0;
    for (const auto& x : nodes) m = std::max(m, x.bag.size());
    return m;
  }
  long width() const noexcept { return static_cast<long>(max_bag_size()) - 1; }
};

/// Checks the node-kind rules and that the bags form a decomposition of g.
inline void validate_nice(const NiceTreeDecomposition& ntd, const WeightedGraph& g) {
  constexpr auto none = NiceNode::kNoNode32;
  if (ntd.nodes.empty()) throw InvalidInput("nice decomposition has no nodes");
  if (!ntd.nodes.back().bag.empty()) throw InvalidInput("root bag is not empty");
  TreeDecomposition td;
  for (std::uint32_t t = 0; t < ntd.nodes.size(); ++t) {
    const auto& x = ntd.nodes[t];
    td.bags.push_back(x.bag);
    auto child_ok = [&](std::uint32_t c) { return c != none && c < t; };
    auto with = [](std::vector<Vertex> b, Vertex v) {
      b.insert(std::lower_bound(b.begin(), b.end(), v), v);
      return b;
    };
    switch (x.kind) {
      case NiceKind::Leaf:
        if (!x.bag.empty() || x.left != none || x.right != none) throw InvalidInput("malformed leaf node");
        break;
      case NiceKind::Introduce:
        if (!child_ok(x.left) || x.right != none || !std::binary_search(x.bag.begin(), x.bag.end(), x.vertex) ||
            with(ntd.nodes[x.left].bag, x.vertex) != x.bag)
          throw InvalidInput("malformed introduce node");
        break;
      case NiceKind::Forget:
        if (!child_ok(x.left) || x.right != none || std::binary_search(x.bag.begin(), x.bag.end(), x.vertex) ||
            with(x.bag, x.vertex) != ntd.nodes[x.left].bag)
          throw InvalidInput("malformed forget node");
        break;
      case NiceKind::Join:
        if (!child_ok(x.left) || !child_ok(x.right) || x.left == x.right ||
            ntd.nodes[x.left].bag != x.bag || ntd.nodes[x.right].bag != x.bag)
          throw InvalidInput("malformed join node");
        break;
    }
    if (x.left != none) td.edges.emplace_back(t, x.left);
    if (x.right != none) td.edges.emplace_back(t, x.right);
  }
  validate_decomposition(td, g);
}

/// Standard conversion: root at bag 0, forget/introduce chains along tree
/// edges, left-deep binary joins, empty leaves and root.
inline NiceTreeDecomposition make_nice(const TreeDecomposition& td) {
  NiceTreeDecomposition out;
  auto push = [&](NiceKind kind, Vertex v, std::uint32_t l, std::uint32_t r, std::vector<Vertex> bag) {
    out.nodes.push_back({kind, v, l, r, std::move(bag)});
    return static_cast<std::uint32_t>(out.nodes.size() - 1);
  };
  constexpr auto none = NiceNode::kNoNode32;
  const std::size_t nb = td.num_bags();
  if (nb == 0) {
    push(NiceKind::Leaf, kNoVertex, none, none, {});
    return out;
  }
  std::vector<std::vector<std::uint32_t>> adj(nb);
  for (auto [a, b] : td.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::uint32_t> parent(nb, none), order{0};
  parent[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto y : adj[order[i]])
      if (parent[y] == none) parent[y] = order[i], order.push_back(y);
  if (order.size() != nb) throw InvalidInput("make_nice: decomposition is not connected");
  std::vector<std::vector<std::uint32_t>> kids(nb);
  for (auto x : order)
    if (x != 0) kids[parent[x]].push_back(x);
  for (auto& k : kids) std::sort(k.begin(), k.end());

  // Moves from node `from` (bag `have`) to a node with bag `want`.
  auto chain = [&](std::uint32_t from, const std::vector<Vertex>& want) {
    std::vector<Vertex> bag = out.nodes[from].bag;
    std::vector<Vertex> drop, add;
    std::set_difference(bag.begin(), bag.end(), want.begin(), want.end(), std::back_inserter(drop));
    std::set_difference(want.begin(), want.end(), bag.begin(), bag.end(), std::back_inserter(add));
    for (Vertex v : drop) {
      bag.erase(std::lower_bound(bag.begin(), bag.end(), v));
      from = push(NiceKind::Forget, v, from, none, bag);
    }
    for (Vertex v : add) {
      bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
      from = push(NiceKind::Introduce, v, from, none, bag);
    }
    return from;
  };

  std::vector<std::uint32_t> top(nb, none);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto t = *it;
    const auto& bag = td.bags[t];
    if (kids[t].empty()) {
      top[t] = chain(push(NiceKind::Leaf, kNoVertex, none, none, {}), bag);
      continue;
    }
    std::uint32_t acc = chain(top[kids[t][0]], bag);
    for (std::size_t i = 1; i < kids[t].size(); ++i) {
      std::uint32_t other = chain(top[kids[t][i]], bag);
      acc = push(NiceKind::Join, kNoVertex, acc, other, bag);
    }
    top[t] = acc;
  }
  const std::uint32_t r = chain(top[0], {});
  if (r + 1 != out.nodes.size()) throw std::logic_error("make_nice: root is not the last node");
  return out;
}

/// Swaps the two children of every join node.
inline void swap_join_children(NiceTreeDecomposition& ntd) {
  for (auto& x : ntd.nodes)
    if (x.kind == NiceKind::Join) std::swap(x.left, x.right);
}

}  // namespace clawfree
