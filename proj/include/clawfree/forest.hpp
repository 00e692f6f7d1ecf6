#pragma once

// Minimum claw-deletion sets of unweighted forests and closed forms for full
// k-ary trees.

#include <cstdint>
#include <numeric>
#include <vector>

#include "clawfree/graph.hpp"
#include "clawfree/solution.hpp"

namespace clawfree {

/// A tree together with a root; children are listed in ascending vertex order.
class RootedTree {
 public:
  RootedTree(const WeightedGraph& tree, Vertex root) : g_(&tree), root_(root) {
    if (!is_tree(tree)) throw InvalidInput("RootedTree: graph is not a tree");
    if (root >= tree.num_vertices()) throw InvalidInput("RootedTree: root out of range");
    const std::size_t n = tree.num_vertices();
    parent_.assign(n, kNoVertex);
    order_.reserve(n);
    order_.push_back(root);
    std::vector<bool> seen(n, false);
    seen[root] = true;
    for (std::size_t i = 0; i < order_.size(); ++i) {
      Vertex v = order_[i];
      for (Vertex u : tree.neighbors(v))
        if (!seen[u]) {
          seen[u] = true;
          parent_[u] = v;
          order_.push_back(u);
        }
    }
  }

  const WeightedGraph& graph() const noexcept { return *g_; }
  Vertex root() const noexcept { return root_; }
  /// kNoVertex for the root.
  Vertex parent(Vertex v) const { return parent_.at(v); }
  std::vector<Vertex> children(Vertex v) const {
    std::vector<Vertex> out;
    for (Vertex u : g_->neighbors(v))
      if (u != parent_[v]) out.push_back(u);
    return out;
  }
  /// Breadth-first order from the root; every vertex precedes its descendants.
  const std::vector<Vertex>& top_down() const noexcept { return order_; }

 private:
  const WeightedGraph* g_;
  Vertex root_;
  std::vector<Vertex> parent_;
  std::vector<Vertex> order_;
};

namespace detail {

// Shared-array post-order form of the recursive procedure. `order` lists
// every vertex after its parent, `parent` is kNoVertex at roots; `in_set`
// accumulates the deletion set.
inline void forest_deletion_pass(const WeightedGraph& g, const std::vector<Vertex>& order,
                                 const std::vector<Vertex>& parent, std::vector<char>& in_set) {
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    const Vertex p = parent[v];
    std::size_t children = 0, alive_children = 0;
    for (Vertex u : g.neighbors(v)) {
      if (u == p) continue;
      ++children;
      alive_children += !in_set[u];
    }
    if (children == 0) continue;
    if (alive_children >= 3) {
      in_set[v] = 1;
    } else if (alive_children == 2 && p != kNoVertex && !in_set[v]) {
      in_set[p] = 1;
    }
  }
}

}  // namespace detail

/// Minimum-cardinality claw-deletion set of a rooted tree (unit weights).
inline VertexSet claw_deletion_set_tree(const RootedTree& t) {
  const WeightedGraph& g = t.graph();
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> parent(n);
  for (Vertex v = 0; v < n; ++v) parent[v] = t.parent(v);
  std::vector<char> in_set(n, 0);
  detail::forest_deletion_pass(g, t.top_down(), parent, in_set);
  VertexSet s(n);
  for (Vertex v = 0; v < n; ++v)
    if (in_set[v]) s.insert(v);
  return s;
}

/// Minimum claw-deletion set of a forest; every tree is rooted at its
/// smallest vertex. Weights are ignored (the set has minimum cardinality).
inline Solution solve_forest(const WeightedGraph& g) {
  const std::size_t n = g.num_vertices();
  // BFS positions: the children of position i are [first[i], last[i]), so
  // the deletion pass below never touches the adjacency arrays.
  std::vector<Vertex> order, up(n, kNoVertex), first(n), last(n);
  order.reserve(n);
  std::vector<char> seen(n, 0);
  std::size_t trees = 0;
  for (Vertex r = 0; r < n; ++r) {
    if (seen[r]) continue;
    seen[r] = 1;
    ++trees;
    std::size_t head = order.size();
    order.push_back(r);
    for (; head < order.size(); ++head) {
      first[head] = static_cast<Vertex>(order.size());
      for (Vertex u : g.neighbors(order[head]))
        if (!seen[u]) {
          seen[u] = 1;
          up[order.size()] = static_cast<Vertex>(head);
          order.push_back(u);
        }
      last[head] = static_cast<Vertex>(order.size());
    }
  }
  if (g.num_edges() + trees != n) throw InvalidInput("solve_forest: graph contains a cycle");
  std::vector<char> del(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    if (first[i] == last[i]) continue;
    std::size_t alive = 0;
    for (Vertex j = first[i]; j < last[i]; ++j) alive += !del[j];
    if (alive >= 3) {
      del[i] = 1;
    } else if (alive == 2 && up[i] != kNoVertex && !del[i]) {
      del[up[i]] = 1;
    }
  }
  std::vector<Vertex> vs;
  for (std::size_t i = 0; i < n; ++i)
    if (del[i]) vs.push_back(order[i]);
  return make_solution(g, std::move(vs), "forest");
}

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw InvalidInput("value exceeds 64-bit range");
  return r;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r = checked_mul(r, base);
  return r;
}

// Exact log_base(x) when x is a power of base, by repeated division.
inline std::optional<unsigned> exact_log(std::uint64_t x, std::uint64_t base) {
  if (x == 0) return std::nullopt;
  unsigned e = 0;
  while (x > 1) {
    if (x % base) return std::nullopt;
    x /= base;
    ++e;
  }
  return e;
}

}  // namespace detail

/// Claw-deletion number of the full binary tree on n vertices:
/// (n + 1 - 2^t) / 7 with t = log2(n + 1) mod 3.
inline std::uint64_t cdn_full_binary(std::uint64_t n) {
  if (n == 0 || n == std::numeric_limits<std::uint64_t>::max())
    throw InvalidInput("cdn_full_binary: no full binary tree has " + std::to_string(n) + " vertices");
  auto l = detail::exact_log(n + 1, 2);
  if (!l) throw InvalidInput("cdn_full_binary: n + 1 must be a power of two");
  const unsigned t = *l % 3;
  return (n + 1 - (std::uint64_t{1} << t)) / 7;
}

/// Claw-deletion number of the full k-ary tree (k >= 3) on n vertices:
/// (nk - n + 1 - k^t) / (k^2 - 1) with t = log_k(nk - n + 1) mod 2.
inline std::uint64_t cdn_full_kary(std::uint64_t k, std::uint64_t n) {
  if (k < 3) throw InvalidInput("cdn_full_kary: arity must be at least 3 (use cdn_full_binary)");
  if (n == 0) throw InvalidInput("cdn_full_kary: n must be positive");
  const std::uint64_t m = detail::checked_mul(n, k - 1) + 1;
  auto l = detail::exact_log(m, k);
  if (!l) throw InvalidInput("cdn_full_kary: n(k-1)+1 must be a power of k");
  const unsigned t = *l % 2;
  return (m - detail::ipow(k, t)) / (k * k - 1);
}

/// Number of vertices of the full k-ary tree of height h.
inline std::uint64_t full_kary_size(std::uint64_t k, unsigned h) {
  if (k < 2) throw InvalidInput("full_kary_size: arity must be at least 2");
  std::uint64_t total = 0, level = 1;
  for (unsigned d = 0; d <= h; ++d) {
    total += level;
    if (d < h) level = detail::checked_mul(level, k);
  }
  return total;
}

/// Claw-deletion number of the full k-ary tree of height h (k >= 2).
inline std::uint64_t cdn_full_tree(std::uint64_t k, unsigned h) {
  const std::uint64_t n = full_kary_size(k, h);
  return k == 2 ? cdn_full_binary(n) : cdn_full_kary(k, n);
}

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// cdn(T)/n for the full k-ary tree of height h, reduced:
///   k = 2:  (2^{h+1} - 2^t) / (7 (2^{h+1} - 1)),       t  = (h+1) mod 3
///   k >= 3: (k^{h+1} - k^t') / ((k+1)(k^{h+1} - 1)),  t' = (h-1) mod 2
inline Rational deletion_fraction(std::uint64_t k, unsigned h) {
  if (k < 2) throw InvalidInput("deletion_fraction: arity must be at least 2");
  const std::uint64_t top = detail::ipow(k, h + 1);
  std::uint64_t num, den;
  if (k == 2) {
    num = top - (std::uint64_t{1} << ((h + 1) % 3));
    den = detail::checked_mul(7, top - 1);
  } else {
    const unsigned tp = (h + 1) % 2;  // (h - 1) mod 2, kept non-negative
    num = top - detail::ipow(k, tp);
    den = detail::checked_mul(k + 1, top - 1);
  }
  if (num == 0) return {0, 1};
  const std::uint64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

}  // namespace clawfree
