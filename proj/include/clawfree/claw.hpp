#pragma once

#include <array>
#include <bit>
#include <optional>
#include <ostream>
#include <vector>

#include "clawfree/graph.hpp"
#include "clawfree/vertex_set.hpp"

namespace clawfree {

/// An induced K_{1,3}: `center` adjacent to three pairwise non-adjacent leaves.
struct ClawWitness {
  Vertex center = kNoVertex;
  std::array<Vertex, 3> leaves{kNoVertex, kNoVertex, kNoVertex};

  std::array<Vertex, 4> vertices() const { return {center, leaves[0], leaves[1], leaves[2]}; }

  bool valid_in(const WeightedGraph& g) const {
    const std::size_t n = g.num_vertices();
    if (center >= n) return false;
    for (std::size_t i = 0; i < 3; ++i) {
      if (leaves[i] >= n || leaves[i] == center || !g.adjacent(center, leaves[i])) return false;
      for (std::size_t j = i + 1; j < 3; ++j)
        if (leaves[i] == leaves[j] || g.adjacent(leaves[i], leaves[j])) return false;
    }
    return true;
  }

  friend bool operator==(const ClawWitness&, const ClawWitness&) = default;
  friend std::ostream& operator<<(std::ostream& os, const ClawWitness& w) {
    return os << "claw(center=" << w.center << ", leaves=" << w.leaves[0] << ',' << w.leaves[1]
              << ',' << w.leaves[2] << ')';
  }
};

/// Combinatorial induced-claw search.
///
/// For every candidate center the neighborhood is scanned for an independent
/// triple using adjacency bitsets: one dense n x n bit matrix when the graph is
/// small, otherwise per-center local rows built on demand. The first witness
/// found is the one with the smallest center, then the lexicographically
/// smallest leaf triple.
class ClawFinder {
 public:
  static constexpr std::size_t kDenseLimit = 4096;

  explicit ClawFinder(const WeightedGraph& g) : g_(g), n_(g.num_vertices()), words_((n_ + 63) / 64) {
    if (n_ <= kDenseLimit) {
      rows_.assign(n_ * words_, 0);
      for (Vertex v = 0; v < n_; ++v)
        for (Vertex u : g.neighbors(v)) rows_[v * words_ + (u >> 6)] |= bit(u);
    }
  }

  const WeightedGraph& graph() const noexcept { return g_; }
  bool dense() const noexcept { return !rows_.empty() || n_ == 0; }

  /// Smallest claw of G \ removed.
  std::optional<ClawWitness> find(const VertexSet* removed = nullptr) const {
    check_universe(removed);
    if (dense()) return find_dense(alive_words(removed));
    return find_sparse(removed);
  }

  /// Smallest claw of G \ removed centred at `v`.
  std::optional<ClawWitness> find_centered(Vertex v, const VertexSet* removed = nullptr) const {
    check_universe(removed);
    if (removed && removed->contains(v)) return std::nullopt;
    if (g_.degree(v) < 3) return std::nullopt;
    if (dense()) return center_dense(v, alive_words(removed));
    std::vector<Vertex> nbrs;
    for (Vertex u : g_.neighbors(v))
      if (!removed || !removed->contains(u)) nbrs.push_back(u);
    if (auto t = independent_triple(nbrs)) return ClawWitness{v, *t};
    return std::nullopt;
  }

  /// Some claw of G \ removed that contains `v` (v must not be removed).
  std::optional<ClawWitness> find_through(Vertex v, const VertexSet* removed = nullptr) const {
    check_universe(removed);
    if (removed && removed->contains(v)) return std::nullopt;
    auto alive = [&](Vertex x) { return !removed || !removed->contains(x); };
    if (dense()) {
      auto live = alive_words(removed);
      if (auto w = center_dense(v, live)) return w;
      std::vector<std::uint64_t> cand(words_);
      for (Vertex y : g_.neighbors(v)) {
        if (!alive(y)) continue;
        const std::uint64_t* ry = row(y);
        const std::uint64_t* rv = row(v);
        for (std::size_t i = 0; i < words_; ++i) cand[i] = ry[i] & live[i] & ~rv[i];
        cand[v >> 6] &= ~bit(v);
        if (auto pair = independent_pair(cand)) return make({y, v, pair->first, pair->second});
      }
      return std::nullopt;
    }
    std::vector<Vertex> nbrs;
    for (Vertex u : g_.neighbors(v))
      if (alive(u)) nbrs.push_back(u);
    if (auto t = independent_triple(nbrs)) return make({v, (*t)[0], (*t)[1], (*t)[2]});
    for (Vertex y : nbrs) {
      std::vector<Vertex> cand;
      for (Vertex x : g_.neighbors(y))
        if (x != v && alive(x) && !g_.adjacent(x, v)) cand.push_back(x);
      for (std::size_t i = 0; i < cand.size(); ++i)
        for (std::size_t j = i + 1; j < cand.size(); ++j)
          if (!g_.adjacent(cand[i], cand[j])) return make({y, v, cand[i], cand[j]});
    }
    return std::nullopt;
  }

 private:
  static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << (i & 63); }
  // Bits of i's word strictly above i.
  static std::uint64_t above(std::size_t i) { return ~((bit(i) << 1) - 1); }

  static ClawWitness make(std::array<Vertex, 4> cv) {
    ClawWitness w{cv[0], {cv[1], cv[2], cv[3]}};
    std::sort(w.leaves.begin(), w.leaves.end());
    return w;
  }

  const std::uint64_t* row(Vertex v) const { return rows_.data() + v * words_; }

  void check_universe(const VertexSet* removed) const {
    if (removed && removed->universe() != n_)
      throw InvalidInput("vertex set universe does not match graph order");
  }

  std::vector<std::uint64_t> alive_words(const VertexSet* removed) const {
    std::vector<std::uint64_t> live(words_, ~std::uint64_t{0});
    if (n_ & 63) live.back() = (std::uint64_t{1} << (n_ & 63)) - 1;
    if (removed)
      for (Vertex v : removed->members()) live[v >> 6] &= ~bit(v);
    return live;
  }

  // First (a, b) with a < b, both in `cand`, non-adjacent.
  std::optional<std::pair<Vertex, Vertex>> independent_pair(const std::vector<std::uint64_t>& cand) const {
    for (std::size_t i = 0; i < words_; ++i)
      for (std::uint64_t w = cand[i]; w; w &= w - 1) {
        Vertex a = static_cast<Vertex>(i * 64 + std::countr_zero(w));
        const std::uint64_t* ra = row(a);
        for (std::size_t j = i; j < words_; ++j) {
          std::uint64_t rest = cand[j] & ~ra[j];
          if (j == i) rest &= above(a);
          if (rest) return std::pair{a, static_cast<Vertex>(j * 64 + std::countr_zero(rest))};
        }
      }
    return std::nullopt;
  }

  std::optional<ClawWitness> center_dense(Vertex v, const std::vector<std::uint64_t>& live) const {
    if (!((live[v >> 6] >> (v & 63)) & 1u) || g_.degree(v) < 3) return std::nullopt;
    std::vector<std::uint64_t> nv(words_), cand(words_);
    const std::uint64_t* rv = row(v);
    for (std::size_t i = 0; i < words_; ++i) nv[i] = rv[i] & live[i];
    for (std::size_t i = 0; i < words_; ++i)
      for (std::uint64_t w = nv[i]; w; w &= w - 1) {
        Vertex a = static_cast<Vertex>(i * 64 + std::countr_zero(w));
        const std::uint64_t* ra = row(a);
        bool any = false;
        for (std::size_t j = 0; j < words_; ++j) {
          cand[j] = j < i ? 0 : nv[j] & ~ra[j];
          any |= cand[j] != 0;
        }
        cand[i] &= above(a);
        if (!any) continue;
        if (auto pair = independent_pair(cand)) return ClawWitness{v, {a, pair->first, pair->second}};
      }
    return std::nullopt;
  }

  std::optional<ClawWitness> find_dense(const std::vector<std::uint64_t>& live) const {
    for (Vertex v = 0; v < n_; ++v)
      if (auto w = center_dense(v, live)) return w;
    return std::nullopt;
  }

  // Lexicographically smallest independent triple of a sorted vertex list,
  // via local bit rows computed on demand.
  std::optional<std::array<Vertex, 3>> independent_triple(const std::vector<Vertex>& nbrs) const {
    const std::size_t d = nbrs.size();
    if (d < 3) return std::nullopt;
    const std::size_t lw = (d + 63) / 64;
    auto local_row = [&](Vertex a, std::vector<std::uint64_t>& out) {
      std::fill(out.begin(), out.end(), 0);
      auto ra = g_.neighbors(a);
      // merge two sorted sequences
      std::size_t i = 0, j = 0;
      while (i < ra.size() && j < d) {
        if (ra[i] < nbrs[j]) ++i;
        else if (nbrs[j] < ra[i]) ++j;
        else {
          out[j >> 6] |= bit(j);
          ++i;
          ++j;
        }
      }
    };
    std::vector<std::uint64_t> ra(lw), rb(lw), cand(lw);
    for (std::size_t ia = 0; ia + 2 < d; ++ia) {
      local_row(nbrs[ia], ra);
      bool any = false;
      for (std::size_t k = 0; k < lw; ++k) {
        cand[k] = ~ra[k];
        if (k < ia / 64) cand[k] = 0;
      }
      cand[ia >> 6] &= above(ia);
      if (d & 63) cand[lw - 1] &= (std::uint64_t{1} << (d & 63)) - 1;
      for (auto c : cand) any |= c != 0;
      if (!any) continue;
      for (std::size_t k = 0; k < lw; ++k)
        for (std::uint64_t w = cand[k]; w; w &= w - 1) {
          std::size_t ib = k * 64 + static_cast<std::size_t>(std::countr_zero(w));
          local_row(nbrs[ib], rb);
          for (std::size_t q = k; q < lw; ++q) {
            std::uint64_t rest = cand[q] & ~rb[q];
            if (q == k) rest &= above(ib);
            if (rest) {
              std::size_t ic = q * 64 + static_cast<std::size_t>(std::countr_zero(rest));
              return std::array<Vertex, 3>{nbrs[ia], nbrs[ib], nbrs[ic]};
            }
          }
        }
    }
    return std::nullopt;
  }

  std::optional<ClawWitness> find_sparse(const VertexSet* removed) const {
    std::vector<Vertex> nbrs;
    for (Vertex v = 0; v < n_; ++v) {
      if (g_.degree(v) < 3 || (removed && removed->contains(v))) continue;
      nbrs.clear();
      for (Vertex u : g_.neighbors(v))
        if (!removed || !removed->contains(u)) nbrs.push_back(u);
      if (auto t = independent_triple(nbrs)) return ClawWitness{v, *t};
    }
    return std::nullopt;
  }

  const WeightedGraph& g_;
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
};

inline std::optional<ClawWitness> find_claw(const WeightedGraph& g) { return ClawFinder(g).find(); }

inline bool is_claw_free(const WeightedGraph& g) { return !find_claw(g).has_value(); }

/// Smallest claw left in G \ s, reported in indices of g.
inline std::optional<ClawWitness> find_claw_after_deletion(const WeightedGraph& g, const VertexSet& s) {
  return ClawFinder(g).find(&s);
}

/// True iff G \ s is claw-free.
inline bool verify_solution(const WeightedGraph& g, const VertexSet& s) {
  return !find_claw_after_deletion(g, s).has_value();
}

inline bool verify_solution(const WeightedGraph& g, std::span<const Vertex> s) {
  return verify_solution(g, VertexSet(g.num_vertices(), s));
}

}  // namespace clawfree
