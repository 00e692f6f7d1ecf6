#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "clawfree/graph.hpp"

namespace clawfree {

/// Blocks (maximal 2-connected subgraphs, bridges and isolated vertices
/// included) and cutpoints of an arbitrary graph.
struct BiconnectedComponents {
  std::vector<std::vector<Vertex>> blocks;  // each sorted ascending
  std::vector<bool> is_cutpoint;
};

/// Single iterative DFS (Hopcroft-Tarjan low-points) so deep paths do not
/// exhaust the call stack.
inline BiconnectedComponents biconnected_components(const WeightedGraph& g) {
  const std::size_t n = g.num_vertices();
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  BiconnectedComponents out;
  out.is_cutpoint.assign(n, false);
  std::vector<std::uint32_t> disc(n, kUnseen), low(n, 0);
  std::vector<Vertex> vstack;
  struct Frame {
    Vertex v, parent;
    std::size_t next;
  };
  std::vector<Frame> frames;
  std::uint32_t clock = 0;

  for (Vertex s = 0; s < n; ++s) {
    if (disc[s] != kUnseen) continue;
    disc[s] = low[s] = clock++;
    if (g.degree(s) == 0) {
      out.blocks.push_back({s});
      continue;
    }
    std::size_t root_children = 0;
    vstack.push_back(s);
    frames.push_back({s, kNoVertex, 0});
    while (!frames.empty()) {
      Frame& f = frames.back();
      auto row = g.neighbors(f.v);
      if (f.next < row.size()) {
        Vertex u = row[f.next++];
        if (u == f.parent) continue;
        if (disc[u] == kUnseen) {
          disc[u] = low[u] = clock++;
          vstack.push_back(u);
          if (f.v == s) ++root_children;
          frames.push_back({u, f.v, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[u]);
        }
        continue;
      }
      Vertex v = f.v, p = f.parent;
      frames.pop_back();
      if (p == kNoVertex) continue;
      low[p] = std::min(low[p], low[v]);
      if (low[v] >= disc[p]) {
        if (p != s) out.is_cutpoint[p] = true;
        std::vector<Vertex> block;
        Vertex x;
        do {
          x = vstack.back();
          vstack.pop_back();
          block.push_back(x);
        } while (x != v);
        block.push_back(p);
        std::sort(block.begin(), block.end());
        out.blocks.push_back(std::move(block));
      }
    }
    vstack.clear();
    if (root_children >= 2) out.is_cutpoint[s] = true;
  }
  return out;
}

/// Block graph test: every block is a clique. Each edge lies in exactly one
/// block, so this holds iff the per-block clique edge counts sum to |E|.
inline bool is_block_graph(const WeightedGraph& g) {
  auto bc = biconnected_components(g);
  std::size_t clique_edges = 0;
  for (const auto& b : bc.blocks) clique_edges += b.size() * (b.size() - 1) / 2;
  return clique_edges == g.num_edges();
}

/// Block-cutpoint tree of a connected graph, rooted at its smallest cutpoint.
///
/// Tree nodes are numbered blocks first (0..num_blocks-1), then cutpoints.
/// Children lists are ascending by node number. When the graph has no
/// cutpoint there is a single block, no root, and `trivial()` holds.
struct BlockCutTree {
  std::vector<std::vector<Vertex>> blocks;
  std::vector<Vertex> cutpoints;  // ascending vertex index
  std::vector<std::uint32_t> parent;
  std::vector<std::vector<std::uint32_t>> children;
  std::vector<std::uint32_t> top_down;  // BFS order from the root
  std::optional<std::uint32_t> root;

  std::size_t num_blocks() const noexcept { return blocks.size(); }
  std::size_t num_nodes() const noexcept { return blocks.size() + cutpoints.size(); }
  bool is_block(std::uint32_t node) const noexcept { return node < blocks.size(); }
  Vertex cut_vertex(std::uint32_t node) const { return cutpoints.at(node - blocks.size()); }
  bool trivial() const noexcept { return cutpoints.empty(); }
};

inline constexpr std::uint32_t kNoNode = std::numeric_limits<std::uint32_t>::max();

inline BlockCutTree block_cutpoint_tree(const WeightedGraph& g) {
  if (!is_connected(g))
    throw InvalidInput("block_cutpoint_tree: graph is disconnected; split into components first");
  auto bc = biconnected_components(g);
  BlockCutTree t;
  t.blocks = std::move(bc.blocks);
  std::vector<std::uint32_t> cut_node(g.num_vertices(), kNoNode);
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (bc.is_cutpoint[v]) {
      cut_node[v] = static_cast<std::uint32_t>(t.blocks.size() + t.cutpoints.size());
      t.cutpoints.push_back(v);
    }
  const std::size_t nodes = t.num_nodes();
  std::vector<std::vector<std::uint32_t>> incident(nodes);
  for (std::uint32_t b = 0; b < t.blocks.size(); ++b)
    for (Vertex v : t.blocks[b])
      if (cut_node[v] != kNoNode) {
        incident[b].push_back(cut_node[v]);
        incident[cut_node[v]].push_back(b);
      }
  for (auto& row : incident) std::sort(row.begin(), row.end());

  t.parent.assign(nodes, kNoNode);
  t.children.assign(nodes, {});
  if (t.cutpoints.empty()) {
    if (!t.blocks.empty()) t.top_down.push_back(0);
    return t;
  }
  t.root = static_cast<std::uint32_t>(t.blocks.size());
  t.top_down.reserve(nodes);
  t.top_down.push_back(*t.root);
  std::vector<bool> seen(nodes, false);
  seen[*t.root] = true;
  for (std::size_t i = 0; i < t.top_down.size(); ++i) {
    std::uint32_t x = t.top_down[i];
    for (std::uint32_t y : incident[x])
      if (!seen[y]) {
        seen[y] = true;
        t.parent[y] = x;
        t.children[x].push_back(y);
        t.top_down.push_back(y);
      }
  }
  return t;
}

}  // namespace clawfree
