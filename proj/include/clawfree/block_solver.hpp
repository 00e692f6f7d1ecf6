#pragma once

// Weighted claw-deletion on block graphs: a three-function DP over the
// block-cutpoint tree, evaluated bottom-up, with top-down set recovery.

#include <ostream>
#include <vector>

#include "clawfree/block_cut_tree.hpp"
#include "clawfree/graph.hpp"
#include "clawfree/solution.hpp"

namespace clawfree {

/// Per-node DP values. Indices follow BlockCutTree node numbering.
///
/// For a cutpoint v: f1 = best for G_v with v deleted, f2 = best for G_v with
/// v kept, f3 = best for G_v plus its parent block with v kept and the parent
/// block not entirely deleted (undefined at the root).
/// For a block b with parent cutpoint p: f1 = best for G_b - p deleting all of
/// b - p, f2 = best for G_b - p, f3 = best for G_b with p kept.
struct BlockDPTables {
  std::vector<Weight> f1, f2, f3;
  std::vector<Weight> s;        // blocks only: weight of non-cutpoint vertices
  std::vector<bool> f3_defined;  // false only at the root
  // Reconstruction records (node ids, kNoNode when unused).
  std::vector<std::uint32_t> pick1;  // cutpoint: b1 of f2 / f3; block: v1 of f2
  std::vector<std::uint32_t> pick2;  // cutpoint: b2 of f2
  std::vector<bool> f2_uses_f3;      // block: f2 attained by the f3 branch
  std::uint32_t root = kNoNode;

  Weight optimum() const {
    if (root == kNoNode) return 0;
    return std::min(f1[root], f2[root]);
  }
};

namespace detail {

inline Weight add(Weight a, Weight b) { return checked_add(a, b); }

}  // namespace detail

inline BlockDPTables compute_block_tables(const BlockCutTree& bct, const WeightedGraph& g) {
  if (!bct.root) throw InvalidInput("compute_block_tables: tree has no cutpoint root");
  if (bct.is_block(*bct.root)) throw InvalidInput("compute_block_tables: root must be a cutpoint");
  const std::size_t nodes = bct.num_nodes();
  BlockDPTables t;
  t.root = *bct.root;
  t.f1.assign(nodes, 0);
  t.f2.assign(nodes, 0);
  t.f3.assign(nodes, 0);
  t.s.assign(bct.num_blocks(), 0);
  t.f3_defined.assign(nodes, true);
  t.f3_defined[t.root] = false;
  t.pick1.assign(nodes, kNoNode);
  t.pick2.assign(nodes, kNoNode);
  t.f2_uses_f3.assign(nodes, false);

  std::vector<bool> is_cut(g.num_vertices(), false);
  for (Vertex c : bct.cutpoints) is_cut[c] = true;
  for (std::uint32_t b = 0; b < bct.num_blocks(); ++b)
    for (Vertex x : bct.blocks[b])
      if (!is_cut[x]) t.s[b] = detail::add(t.s[b], g.weight(x));

  for (auto it = bct.top_down.rbegin(); it != bct.top_down.rend(); ++it) {
    const std::uint32_t x = *it;
    const auto& kids = bct.children[x];
    if (bct.is_block(x)) {
      if (kids.empty()) {
        t.f1[x] = t.s[x];
        t.f2[x] = t.f3[x] = 0;
        continue;
      }
      Weight all_f1 = t.s[x], mixed = 0, best_diff = kInfiniteWeight;
      for (std::uint32_t v : kids) {
        all_f1 = detail::add(all_f1, t.f1[v]);
        mixed = detail::add(mixed, std::min(t.f1[v], t.f3[v]));
        const Weight d = t.f2[v] - t.f1[v];
        if (d < best_diff) {
          best_diff = d;
          t.pick1[x] = v;
        }
      }
      t.f1[x] = all_f1;
      t.f3[x] = mixed;
      const Weight spare_one = all_f1 + best_diff;
      t.f2_uses_f3[x] = mixed <= spare_one;
      t.f2[x] = std::min(mixed, spare_one);
    } else {
      const Vertex v = bct.cut_vertex(x);
      Weight sum_f2 = g.weight(v), sum_f3 = 0, sum_f1 = 0;
      // two smallest f3(b) - f1(b), ties to the smaller node id
      Weight d1 = kInfiniteWeight, d2 = kInfiniteWeight;
      std::uint32_t b1 = kNoNode, b2 = kNoNode;
      for (std::uint32_t b : kids) {
        sum_f2 = detail::add(sum_f2, t.f2[b]);
        sum_f3 = detail::add(sum_f3, t.f3[b]);
        sum_f1 = detail::add(sum_f1, t.f1[b]);
        const Weight d = t.f3[b] - t.f1[b];
        if (d < d1) {
          d2 = d1, b2 = b1;
          d1 = d, b1 = b;
        } else if (d < d2) {
          d2 = d, b2 = b;
        }
      }
      t.f1[x] = sum_f2;
      if (kids.size() <= 2) {
        t.f2[x] = sum_f3;
      } else {
        t.f2[x] = sum_f1 + d1 + d2;
        t.pick1[x] = b1;
        t.pick2[x] = b2;
      }
      if (x == t.root) {
        t.f3[x] = kInfiniteWeight;
      } else if (kids.size() == 1) {
        t.f3[x] = t.f3[kids[0]];
      } else {
        t.f3[x] = sum_f1 + d1;
        if (kids.size() <= 2) t.pick1[x] = b1;
      }
    }
  }
  return t;
}

/// Replays the recorded choices from the root; the result has weight
/// exactly tables.optimum().
inline VertexSet reconstruct_block_solution(const BlockDPTables& t, const BlockCutTree& bct,
                                            const WeightedGraph& g) {
  VertexSet out(g.num_vertices());
  if (t.root == kNoNode) return out;
  std::vector<bool> is_cut(g.num_vertices(), false);
  for (Vertex c : bct.cutpoints) is_cut[c] = true;

  enum Mode : std::uint8_t { F1 = 1, F2 = 2, F3 = 3 };
  std::vector<std::pair<std::uint32_t, Mode>> stack;
  stack.emplace_back(t.root, t.f1[t.root] <= t.f2[t.root] ? F1 : F2);
  while (!stack.empty()) {
    auto [x, mode] = stack.back();
    stack.pop_back();
    const auto& kids = bct.children[x];
    if (bct.is_block(x)) {
      if (mode == F2) mode = (kids.empty() || t.f2_uses_f3[x]) ? F3 : F2;
      if (mode == F1 || (mode == F2 && !kids.empty())) {
        for (Vertex y : bct.blocks[x])
          if (!is_cut[y]) out.insert(y);
      }
      for (std::uint32_t v : kids) {
        Mode m;
        if (mode == F1) m = F1;
        else if (mode == F3) m = t.f1[v] <= t.f3[v] ? F1 : F3;
        else m = v == t.pick1[x] ? F2 : F1;
        stack.emplace_back(v, m);
      }
    } else {
      if (mode == F1) out.insert(bct.cut_vertex(x));
      for (std::uint32_t b : kids) {
        Mode m;
        if (mode == F1) m = F2;
        else if (mode == F2) m = (kids.size() <= 2 || b == t.pick1[x] || b == t.pick2[x]) ? F3 : F1;
        else m = (kids.size() == 1 || b == t.pick1[x]) ? F3 : F1;
        stack.emplace_back(b, m);
      }
    }
  }
  return out;
}

/// Minimum-weight claw-deletion set of a connected block graph.
inline Solution solve_block_graph(const WeightedGraph& g) {
  if (!is_connected(g)) throw InvalidInput("solve_block_graph: graph is disconnected");
  if (!is_block_graph(g)) throw InvalidInput("solve_block_graph: graph is not a block graph");
  if (is_complete(g)) return make_solution(g, {}, "block");
  const BlockCutTree bct = block_cutpoint_tree(g);
  const BlockDPTables t = compute_block_tables(bct, g);
  return make_solution(g, reconstruct_block_solution(t, bct, g).members(), "block");
}

/// Tab-separated dump: kind, id (block index or cutpoint label), s, f1, f2, f3.
inline void write_block_tables(std::ostream& os, const BlockDPTables& t, const BlockCutTree& bct,
                               const WeightedGraph& g) {
  os << "kind\tid\ts\tf1\tf2\tf3\n";
  for (std::uint32_t x : bct.top_down) {
    const bool block = bct.is_block(x);
    os << (block ? "block" : "cut") << '\t';
    if (block) os << x << '\t' << t.s[x];
    else os << g.label(bct.cut_vertex(x)) << "\t-";
    os << '\t' << t.f1[x] << '\t' << t.f2[x] << '\t';
    if (t.f3_defined[x]) os << t.f3[x];
    else os << '-';
    os << '\n';
  }
}

}  // namespace clawfree
