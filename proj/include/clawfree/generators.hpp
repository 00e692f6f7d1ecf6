#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clawfree/detail/rng.hpp"
#include "clawfree/graph.hpp"
#include "clawfree/tree_decomposition.hpp"

namespace clawfree {

inline constexpr std::size_t kMaxGeneratedVertices = 100'000'000;

/// Full k-ary tree of height h; vertex 0 is the root and the children of i
/// are k*i+1 .. k*i+k.
inline WeightedGraph gen_full_kary(std::uint64_t k, unsigned h) {
  if (k < 2) throw InvalidInput("gen_full_kary: arity must be at least 2");
  std::uint64_t n = 0, level = 1;
  for (unsigned d = 0; d <= h; ++d) {
    n += level;
    if (n > kMaxGeneratedVertices) throw InvalidInput("gen_full_kary: tree would exceed the vertex limit");
    level *= k;
  }
  GraphBuilder b(static_cast<std::size_t>(n));
  for (std::uint64_t v = 1; v < n; ++v) b.add_edge(static_cast<Vertex>((v - 1) / k), static_cast<Vertex>(v));
  return std::move(b).build();
}

struct WeightRange {
  Weight lo = 1, hi = 1;
};

namespace detail {

inline void random_weights(GraphBuilder& b, std::size_t n, WeightRange w, Rng& rng) {
  if (w.lo < 1 || w.hi < w.lo) throw InvalidInput("weight range must satisfy 1 <= lo <= hi");
  if (w.lo == 1 && w.hi == 1) return;
  for (Vertex v = 0; v < n; ++v)
    b.set_weight(v, static_cast<Weight>(rng.uniform(static_cast<std::uint64_t>(w.lo), static_cast<std::uint64_t>(w.hi))));
}

inline void check_size(std::size_t n) {
  if (n == 0) throw InvalidInput("generator: n must be positive");
  if (n > kMaxGeneratedVertices) throw InvalidInput("generator: n exceeds the vertex limit");
}

}  // namespace detail

/// Uniform labelled tree from a random Pruefer sequence (linear decoding).
inline WeightedGraph random_tree(std::size_t n, std::uint64_t seed, WeightRange w = {}) {
  detail::check_size(n);
  detail::Rng rng(seed);
  GraphBuilder b(n);
  if (n == 2) b.add_edge(0, 1);
  if (n > 2) {
    std::vector<Vertex> code(n - 2);
    std::vector<std::uint32_t> degree(n, 1);
    for (auto& c : code) {
      c = static_cast<Vertex>(rng.index(n));
      ++degree[c];
    }
    std::size_t ptr = 0;
    while (degree[ptr] != 1) ++ptr;
    Vertex leaf = static_cast<Vertex>(ptr);
    for (Vertex c : code) {
      b.add_edge(leaf, c);
      if (--degree[c] == 1 && c < ptr) {
        leaf = c;
      } else {
        ++ptr;
        while (degree[ptr] != 1) ++ptr;
        leaf = static_cast<Vertex>(ptr);
      }
    }
    b.add_edge(leaf, static_cast<Vertex>(n - 1));
  }
  detail::random_weights(b, n, w, rng);
  return std::move(b).build();
}

/// Connected block graph: cliques of size 2..max_clique glued in a random
/// tree shape, each new clique sharing one existing vertex.
inline WeightedGraph random_block_graph(std::size_t n, std::size_t max_clique, std::uint64_t seed,
                                        WeightRange w = {}) {
  detail::check_size(n);
  if (max_clique < 2) throw InvalidInput("random_block_graph: max clique size must be at least 2");
  detail::Rng rng(seed);
  GraphBuilder b(n);
  std::vector<Vertex> members;
  std::size_t count = 1;
  while (count < n) {
    const std::size_t size = rng.uniform(2, max_clique);
    members.clear();
    members.push_back(static_cast<Vertex>(rng.index(count)));
    for (std::size_t i = 1; i < size && count < n; ++i) members.push_back(static_cast<Vertex>(count++));
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) b.add_edge(members[i], members[j]);
  }
  detail::random_weights(b, n, w, rng);
  return std::move(b).build();
}

struct PartialKTree {
  WeightedGraph graph;
  TreeDecomposition decomposition;  // width <= k, valid for graph
};

/// Random k-tree (each new vertex joined to a k-clique of an existing
/// (k+1)-clique), then every edge dropped independently with probability p.
inline PartialKTree random_partial_ktree(std::size_t n, std::size_t k, double p, std::uint64_t seed,
                                         WeightRange w = {}) {
  detail::check_size(n);
  if (k < 1) throw InvalidInput("random_partial_ktree: k must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("random_partial_ktree: p must lie in [0, 1]");
  detail::Rng rng(seed);
  std::vector<std::pair<Vertex, Vertex>> edges;
  TreeDecomposition td;
  const std::size_t base = std::min(n, k + 1);
  std::vector<Vertex> first(base);
  for (Vertex v = 0; v < base; ++v) {
    first[v] = v;
    for (Vertex u = 0; u < v; ++u) edges.emplace_back(u, v);
  }
  td.bags.push_back(first);
  for (Vertex v = static_cast<Vertex>(base); v < n; ++v) {
    const std::size_t from = rng.index(td.bags.size());
    std::vector<Vertex> bag = td.bags[from];
    bag.erase(bag.begin() + static_cast<std::ptrdiff_t>(rng.index(bag.size())));
    for (Vertex u : bag) edges.emplace_back(u, v);
    bag.push_back(v);
    td.bags.push_back(std::move(bag));
    td.edges.emplace_back(static_cast<std::uint32_t>(from), static_cast<std::uint32_t>(td.bags.size() - 1));
  }
  td.normalize();
  GraphBuilder b(n);
  for (auto [u, v] : edges)
    if (!rng.chance(p)) b.add_edge(u, v);
  detail::random_weights(b, n, w, rng);
  return {std::move(b).build(), std::move(td)};
}

/// Clique on 0..clique-1, independent set on the rest, each cross pair an
/// edge with probability p.
inline WeightedGraph random_split(std::size_t clique, std::size_t independent, double p, std::uint64_t seed,
                                  WeightRange w = {}) {
  const std::size_t n = clique + independent;
  detail::check_size(n);
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("random_split: p must lie in [0, 1]");
  detail::Rng rng(seed);
  GraphBuilder b(n);
  for (Vertex u = 0; u < clique; ++u)
    for (Vertex v = u + 1; v < clique; ++v) b.add_edge(u, v);
  for (Vertex i = static_cast<Vertex>(clique); i < n; ++i)
    for (Vertex c = 0; c < clique; ++c)
      if (rng.chance(p)) b.add_edge(c, i);
  detail::random_weights(b, n, w, rng);
  return std::move(b).build();
}

/// True when the vertices split into a clique and an independent set
/// (degree-sequence test of Hammer and Simeone).
inline bool is_split_graph(const WeightedGraph& g) {
  std::vector<std::size_t> d;
  for (Vertex v = 0; v < g.num_vertices(); ++v) d.push_back(g.degree(v));
  std::sort(d.rbegin(), d.rend());
  std::size_t m = 0;
  while (m < d.size() && d[m] >= m) ++m;
  std::size_t lhs = 0, rhs = m * (m - (m ? 1 : 0));
  for (std::size_t i = 0; i < m; ++i) lhs += d[i];
  for (std::size_t i = m; i < d.size(); ++i) rhs += d[i];
  return lhs == rhs;
}

enum class Family { Tree, Block, PartialKTree, Split };

inline std::optional<Family> family_from_string(std::string_view s) {
  if (s == "tree") return Family::Tree;
  if (s == "block") return Family::Block;
  if (s == "partial-ktree" || s == "ktree") return Family::PartialKTree;
  if (s == "split") return Family::Split;
  return std::nullopt;
}

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Tree: return "tree";
    case Family::Block: return "block";
    case Family::PartialKTree: return "partial-ktree";
    case Family::Split: return "split";
  }
  return "?";
}

struct GenParams {
  Family family = Family::Tree;
  std::size_t n = 10;
  /// block: max clique size; partial-ktree: k; split: clique size.
  std::size_t k = 3;
  /// partial-ktree: edge deletion rate; split: cross-edge probability.
  double p = 0.3;
  std::uint64_t seed = 1;
  WeightRange weights{};
};

inline WeightedGraph gen_random(const GenParams& q) {
  switch (q.family) {
    case Family::Tree: return random_tree(q.n, q.seed, q.weights);
    case Family::Block: return random_block_graph(q.n, q.k, q.seed, q.weights);
    case Family::PartialKTree: return random_partial_ktree(q.n, q.k, q.p, q.seed, q.weights).graph;
    case Family::Split:
      if (q.k > q.n) throw InvalidInput("split: clique size exceeds n");
      return random_split(q.k, q.n - q.k, q.p, q.seed, q.weights);
  }
  throw InvalidInput("unknown family");
}

/// Output of the vertex-cover reduction.
struct ReductionMap {
  WeightedGraph graph;
  std::vector<Vertex> independent;                 // source vertex j -> its copy in G'
  std::vector<std::vector<Vertex>> clique_parts;   // C_1 .. C_{m+1}
  std::vector<std::pair<Vertex, Vertex>> source_edges;  // e_1 .. e_m, lexicographic
};

inline constexpr std::size_t kMaxReductionVertices = 10'000'000;
inline constexpr std::size_t kMaxReductionEdges = 50'000'000;

/// Split graph G' with independent side I = copies of V(G) and clique side
/// C = C_1 .. C_{m+1}, |C_i| = 2n; the endpoints of e_i see all of C_i.
/// G has a vertex cover of size k iff G' has a claw-deletion set of size k.
inline ReductionMap vc_to_split(const WeightedGraph& g, std::optional<Weight> clique_weight = std::nullopt) {
  const std::size_t n = g.num_vertices(), m = g.num_edges();
  if (m == 0) throw InvalidInput("vc_to_split: source graph has no edges");
  const std::size_t part = 2 * n;
  const std::size_t csize = part * (m + 1);
  if (csize / part != m + 1 || n + csize > kMaxReductionVertices)
    throw InvalidInput("vc_to_split: output exceeds " + std::to_string(kMaxReductionVertices) + " vertices");
  if (csize > 1 && (csize - 1) > 2 * kMaxReductionEdges / csize)
    throw InvalidInput("vc_to_split: output exceeds " + std::to_string(kMaxReductionEdges) + " edges");
  if (clique_weight && *clique_weight < 1) throw InvalidInput("vc_to_split: clique weight must be positive");

  ReductionMap r;
  r.source_edges = g.edges();
  GraphBuilder b(n + csize);
  std::vector<std::string> labels;
  labels.reserve(n + csize);
  for (Vertex v = 0; v < n; ++v) {
    r.independent.push_back(v);
    labels.push_back(g.label(v));
  }
  r.clique_parts.resize(m + 1);
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = 0; j < part; ++j) {
      const Vertex c = static_cast<Vertex>(n + i * part + j);
      r.clique_parts[i].push_back(c);
      labels.push_back("c" + std::to_string(i + 1) + "." + std::to_string(j + 1));
      if (clique_weight) b.set_weight(c, *clique_weight);
    }
  for (Vertex u = static_cast<Vertex>(n); u < n + csize; ++u)
    for (Vertex v = u + 1; v < n + csize; ++v) b.add_edge(u, v);
  for (std::size_t i = 0; i < m; ++i)
    for (Vertex c : r.clique_parts[i]) {
      b.add_edge(r.source_edges[i].first, c);
      b.add_edge(r.source_edges[i].second, c);
    }
  b.set_labels(std::move(labels));
  r.graph = std::move(b).build();
  return r;
}

}  // namespace clawfree
