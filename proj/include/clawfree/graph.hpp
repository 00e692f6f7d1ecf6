#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clawfree/types.hpp"
#include "clawfree/vertex_set.hpp"

namespace clawfree {

/// Simple undirected graph with positive integer vertex weights.
///
/// Adjacency is stored in compressed rows; each row is strictly increasing.
/// Instances are immutable once built (use GraphBuilder) and safe to share
/// between threads.
class WeightedGraph {
 public:
  WeightedGraph() : offsets_(1, 0) {}

  std::size_t num_vertices() const noexcept { return weights_.size(); }
  std::size_t num_edges() const noexcept { return adjacency_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  bool adjacent(Vertex u, Vertex v) const noexcept {
    if (degree(u) > degree(v)) std::swap(u, v);
    auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
  }

  Weight weight(Vertex v) const noexcept { return weights_[v]; }
  std::span<const Weight> weights() const noexcept { return weights_; }
  Weight total_weight() const noexcept { return total_weight_; }
  bool unit_weights() const noexcept {
    return std::all_of(weights_.begin(), weights_.end(), [](Weight w) { return w == 1; });
  }

  bool has_labels() const noexcept { return !labels_.empty(); }
  /// External name of `v`; the decimal index when no label table is present.
  std::string label(Vertex v) const { return labels_.empty() ? std::to_string(v) : labels_[v]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Edges as (u, v) with u < v, in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(num_edges());
    for (Vertex u = 0; u < num_vertices(); ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  Weight weight_of(std::span<const Vertex> vs) const {
    Weight s = 0;
    for (Vertex v : vs) s += weights_.at(v);
    return s;
  }
  Weight weight_of(const VertexSet& s) const { return weight_of(s.members()); }

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  friend class GraphBuilder;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
  std::vector<Weight> weights_;
  std::vector<std::string> labels_;
  Weight total_weight_ = 0;
};

/// Accumulates edges and weights, then produces a canonical WeightedGraph.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n = 0) : weights_(n, 1) {}

  std::size_t num_vertices() const noexcept { return weights_.size(); }

  Vertex add_vertex(Weight w = 1) {
    check_weight(w);
    weights_.push_back(w);
    return static_cast<Vertex>(weights_.size() - 1);
  }

  GraphBuilder& add_edge(Vertex u, Vertex v) {
    if (u >= num_vertices() || v >= num_vertices())
      throw InvalidInput("edge " + std::to_string(u) + "-" + std::to_string(v) +
                         " references a vertex out of range");
    if (u == v) throw InvalidInput("self-loop at vertex " + std::to_string(u));
    edges_.emplace_back(u, v);
    return *this;
  }

  GraphBuilder& set_weight(Vertex v, Weight w) {
    check_weight(w);
    weights_.at(v) = w;
    return *this;
  }

  GraphBuilder& set_labels(std::vector<std::string> labels) {
    labels_ = std::move(labels);
    return *this;
  }

  /// Throws InvalidInput on duplicate edges or a label table of the wrong size.
  WeightedGraph build() && {
    WeightedGraph g;
    const std::size_t n = weights_.size();
    if (!labels_.empty() && labels_.size() != n)
      throw InvalidInput("label table size does not match vertex count");
    g.offsets_.assign(n + 1, 0);
    for (auto [u, v] : edges_) {
      ++g.offsets_[u + 1];
      ++g.offsets_[v + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.adjacency_.resize(2 * edges_.size());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges_) {
      g.adjacency_[fill[u]++] = v;
      g.adjacency_[fill[v]++] = u;
    }
    edges_.clear();
    edges_.shrink_to_fit();
    for (Vertex v = 0; v < n; ++v) {
      auto b = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
      auto e = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
      std::sort(b, e);
      if (auto d = std::adjacent_find(b, e); d != e)
        throw InvalidInput("duplicate edge " + std::to_string(v) + "-" + std::to_string(*d));
    }
    Weight total = 0;
    for (Weight w : weights_) total = detail::checked_add(total, w);
    g.total_weight_ = total;
    g.weights_ = std::move(weights_);
    g.labels_ = std::move(labels_);
    return g;
  }

 private:
  static void check_weight(Weight w) {
    if (w <= 0) throw InvalidInput("vertex weight must be positive, got " + std::to_string(w));
  }

  std::vector<Weight> weights_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::string> labels_;
};

/// Induced subgraph plus the map from new indices to indices of the source graph.
struct InducedSubgraph {
  WeightedGraph graph;
  std::vector<Vertex> original;
};

/// G[keep]; `keep` may be in any order, the result preserves ascending source order.
inline InducedSubgraph induced_subgraph(const WeightedGraph& g, std::span<const Vertex> keep) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidInput("induced_subgraph: repeated vertex");
  if (!sorted.empty() && sorted.back() >= n)
    throw InvalidInput("induced_subgraph: vertex " + std::to_string(sorted.back()) + " out of range");
  std::vector<Vertex> remap(n, kNoVertex);
  for (std::size_t i = 0; i < sorted.size(); ++i) remap[sorted[i]] = static_cast<Vertex>(i);
  GraphBuilder b(sorted.size());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    Vertex u = sorted[i];
    b.set_weight(static_cast<Vertex>(i), g.weight(u));
    if (g.has_labels()) labels.push_back(g.label(u));
    for (Vertex v : g.neighbors(u))
      if (u < v && remap[v] != kNoVertex) b.add_edge(static_cast<Vertex>(i), remap[v]);
  }
  if (g.has_labels()) b.set_labels(std::move(labels));
  return {std::move(b).build(), std::move(sorted)};
}

/// G \ s.
inline InducedSubgraph delete_vertices(const WeightedGraph& g, const VertexSet& s) {
  if (s.universe() != g.num_vertices())
    throw InvalidInput("delete_vertices: set universe does not match graph order");
  std::vector<Vertex> keep;
  keep.reserve(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (!s.contains(v)) keep.push_back(v);
  return induced_subgraph(g, keep);
}

/// Component id per vertex; ids are assigned in order of smallest member.
inline std::vector<std::uint32_t> component_ids(const WeightedGraph& g, std::size_t* count = nullptr) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint32_t> comp(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<Vertex> stack;
  std::uint32_t next = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] != std::numeric_limits<std::uint32_t>::max()) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : g.neighbors(u))
        if (comp[v] == std::numeric_limits<std::uint32_t>::max()) {
          comp[v] = next;
          stack.push_back(v);
        }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

/// Partition of V into maximal connected sets, each sorted ascending, ordered
/// by smallest member.
inline std::vector<std::vector<Vertex>> connected_components(const WeightedGraph& g) {
  std::size_t count = 0;
  auto comp = component_ids(g, &count);
  std::vector<std::vector<Vertex>> out(count);
  for (Vertex v = 0; v < g.num_vertices(); ++v) out[comp[v]].push_back(v);
  return out;
}

inline bool is_connected(const WeightedGraph& g) {
  std::size_t count = 0;
  component_ids(g, &count);
  return count <= 1;
}

inline bool is_forest(const WeightedGraph& g) {
  std::size_t count = 0;
  component_ids(g, &count);
  return g.num_edges() + count == g.num_vertices();
}

inline bool is_tree(const WeightedGraph& g) {
  return g.num_vertices() > 0 && g.num_edges() + 1 == g.num_vertices() && is_connected(g);
}

inline bool is_complete(const WeightedGraph& g) {
  const std::size_t n = g.num_vertices();
  return n == 0 || g.num_edges() == n * (n - 1) / 2;
}

}  // namespace clawfree
