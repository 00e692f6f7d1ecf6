#pragma once

// Exact reference solvers (branch and bound, plain enumeration) and the
// local-ratio 4-approximation.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "clawfree/claw.hpp"
#include "clawfree/graph.hpp"
#include "clawfree/solution.hpp"

namespace clawfree {

struct BruteForceOptions {
  /// Search nodes before ResourceError.
  std::uint64_t node_budget = 50'000'000;
  /// Refuse graphs larger than this (dense bit rows are n^2 bits).
  std::size_t max_vertices = 4096;
};

namespace detail {

class DenseBits {
 public:
  explicit DenseBits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  static DenseBits full(std::size_t n) {
    DenseBits b(n);
    for (std::size_t i = 0; i < b.w_.size(); ++i) b.w_[i] = ~std::uint64_t{0};
    if (n & 63) b.w_.back() = (std::uint64_t{1} << (n & 63)) - 1;
    return b;
  }
  bool test(std::size_t i) const { return w_[i >> 6] >> (i & 63) & 1u; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool any() const {
    for (auto x : w_)
      if (x) return true;
    return false;
  }
  std::size_t first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return i * 64 + std::countr_zero(w_[i]);
    return npos;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      for (std::uint64_t x = w_[i]; x; x &= x - 1) f(i * 64 + std::countr_zero(x));
  }
  std::vector<std::uint64_t>& words() { return w_; }
  const std::vector<std::uint64_t>& words() const { return w_; }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::uint64_t> w_;
};

// Claw search on a dense adjacency matrix restricted to an alive mask.
class DenseClaws {
 public:
  explicit DenseClaws(const WeightedGraph& g) : n_(g.num_vertices()), words_((n_ + 63) / 64) {
    rows_.assign(n_, DenseBits(n_));
    for (Vertex v = 0; v < n_; ++v)
      for (Vertex u : g.neighbors(v)) rows_[v].set(u);
  }

  const DenseBits& row(std::size_t v) const { return rows_[v]; }

  // Smallest center, then lexicographically smallest leaves.
  std::optional<ClawWitness> find(const DenseBits& alive) const {
    std::optional<ClawWitness> out;
    alive.for_each([&](std::size_t v) {
      if (out) return;
      out = centered(v, alive);
    });
    return out;
  }

  std::optional<ClawWitness> centered(std::size_t v, const DenseBits& alive) const {
    const auto& rv = rows_[v].words();
    const auto& al = alive.words();
    std::vector<std::uint64_t> nv(words_);
    std::size_t count = 0;
    for (std::size_t i = 0; i < words_; ++i) count += std::popcount(nv[i] = rv[i] & al[i]);
    if (count < 3) return std::nullopt;
    for (std::size_t i = 0; i < words_; ++i)
      for (std::uint64_t x = nv[i]; x; x &= x - 1) {
        const std::size_t a = i * 64 + std::countr_zero(x);
        const auto& ra = rows_[a].words();
        for (std::size_t j = i; j < words_; ++j) {
          std::uint64_t cb = nv[j] & ~ra[j];
          if (j == i) cb &= above(a);
          for (; cb; cb &= cb - 1) {
            const std::size_t b = j * 64 + std::countr_zero(cb);
            const auto& rb = rows_[b].words();
            for (std::size_t k = j; k < words_; ++k) {
              std::uint64_t cc = nv[k] & ~ra[k] & ~rb[k];
              if (k == j) cc &= above(b);
              if (cc)
                return ClawWitness{static_cast<Vertex>(v),
                                   {static_cast<Vertex>(a), static_cast<Vertex>(b),
                                    static_cast<Vertex>(k * 64 + std::countr_zero(cc))}};
            }
          }
        }
      }
    return std::nullopt;
  }

  // Connected components of G[alive], each as a mask.
  std::vector<DenseBits> components(const DenseBits& alive) const {
    std::vector<DenseBits> out;
    DenseBits left = alive;
    std::vector<std::size_t> stack;
    while (true) {
      const std::size_t s = left.first();
      if (s == DenseBits::npos) break;
      DenseBits comp(n_);
      comp.set(s);
      left.reset(s);
      stack.assign(1, s);
      while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        const auto& rv = rows_[v].words();
        auto& lw = left.words();
        for (std::size_t i = 0; i < words_; ++i) {
          std::uint64_t nxt = rv[i] & lw[i];
          if (!nxt) continue;
          lw[i] &= ~nxt;
          comp.words()[i] |= nxt;
          for (; nxt; nxt &= nxt - 1) stack.push_back(i * 64 + std::countr_zero(nxt));
        }
      }
      out.push_back(std::move(comp));
    }
    return out;
  }

 private:
  static std::uint64_t above(std::size_t i) { return ~((std::uint64_t{2} << (i & 63)) - 1); }

  std::size_t n_, words_;
  std::vector<DenseBits> rows_;
};

class BranchAndBound {
 public:
  BranchAndBound(const WeightedGraph& g, const BruteForceOptions& opt) : g_(g), claws_(g), opt_(opt) {}

  // Minimum over deletion sets of G[alive] avoiding `kept`; returns a value
  // >= bound when nothing below bound exists. `out` receives the set.
  Weight solve(const DenseBits& alive, const DenseBits& kept, Weight bound, std::vector<Vertex>& out) {
    if (++nodes_ > opt_.node_budget)
      throw ResourceError("brute_force_min: node budget of " + std::to_string(opt_.node_budget) + " exhausted");
    auto claw = claws_.find(alive);
    if (!claw) {
      out.clear();
      return 0;
    }
    auto comps = claws_.components(alive);
    if (comps.size() > 1) return solve_split(comps, kept, bound, out);

    if (lower_bound(alive, kept) >= bound) return bound;
    Weight best = bound;
    std::vector<Vertex> sub;
    DenseBits kept_here = kept;
    for (Vertex x : claw->vertices()) {
      if (kept.test(x)) continue;
      const Weight wx = g_.weight(x);
      if (wx < best) {
        DenseBits next = alive;
        next.reset(x);
        const Weight r = solve(next, kept_here, best - wx, sub);
        if (r < best - wx) {
          best = r + wx;
          out = sub;
          out.push_back(x);
        }
      }
      kept_here.set(x);
    }
    return best;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  Weight solve_split(const std::vector<DenseBits>& comps, const DenseBits& kept, Weight bound,
                     std::vector<Vertex>& out) {
    std::vector<Weight> lbs(comps.size());
    Weight lb_total = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      lbs[i] = lower_bound(comps[i], kept);
      if (lbs[i] >= bound) return bound;
      lb_total += lbs[i];
    }
    if (lb_total >= bound) return bound;
    std::vector<Vertex> acc, sub;
    Weight total = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      lb_total -= lbs[i];
      const Weight room = bound - total - lb_total;
      const Weight r = solve(comps[i], kept, room, sub);
      if (r >= room) return bound;
      total += r;
      acc.insert(acc.end(), sub.begin(), sub.end());
    }
    out = std::move(acc);
    return total;
  }

  // Greedy packing of vertex-disjoint claws; each needs one deleted vertex.
  Weight lower_bound(const DenseBits& alive, const DenseBits& kept) const {
    DenseBits rest = alive;
    Weight lb = 0;
    while (auto c = claws_.find(rest)) {
      Weight m = kInfiniteWeight;
      for (Vertex x : c->vertices()) {
        if (!kept.test(x)) m = std::min(m, g_.weight(x));
        rest.reset(x);
      }
      lb = detail::checked_add(lb, m);
      if (lb >= kInfiniteWeight) return kInfiniteWeight;
    }
    return lb;
  }

  const WeightedGraph& g_;
  DenseClaws claws_;
  BruteForceOptions opt_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

inline Solution greedy_4_approx(const WeightedGraph& g);

/// Exact minimum-weight claw-deletion set by branching on claws.
inline Solution brute_force_min(const WeightedGraph& g, const BruteForceOptions& opt = {}) {
  const std::size_t n = g.num_vertices();
  if (n > opt.max_vertices)
    throw ResourceError("brute_force_min: " + std::to_string(n) + " vertices exceeds the limit of " +
                        std::to_string(opt.max_vertices));
  detail::BranchAndBound bb(g, opt);
  const Solution start = greedy_4_approx(g);
  std::vector<Vertex> set;
  const Weight r = bb.solve(detail::DenseBits::full(n), detail::DenseBits(n), detail::checked_add(start.weight, 1), set);
  if (r > start.weight) throw std::logic_error("brute_force_min: search missed the greedy solution");
  Solution s = make_solution(g, std::move(set), "oracle");
  if (s.weight != r) throw std::logic_error("brute_force_min: set weight mismatch");
  return s;
}

/// Minimum over all 2^n subsets (n <= 24). Ties go to the subset whose
/// bitmask is smallest.
inline Solution exhaustive_min(const WeightedGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n > 24) throw ResourceError("exhaustive_min: at most 24 vertices supported");
  detail::DenseClaws claws(g);
  Weight best = kInfiniteWeight;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    Weight w = 0;
    for (std::uint32_t m = mask; m; m &= m - 1) w += g.weight(static_cast<Vertex>(std::countr_zero(m)));
    if (w >= best) continue;
    detail::DenseBits alive = detail::DenseBits::full(n);
    for (std::uint32_t m = mask; m; m &= m - 1) alive.reset(std::countr_zero(m));
    if (claws.find(alive)) continue;
    best = w;
    best_mask = mask;
  }
  std::vector<Vertex> set;
  for (std::uint32_t m = best_mask; m; m &= m - 1) set.push_back(static_cast<Vertex>(std::countr_zero(m)));
  return make_solution(g, std::move(set), "exhaustive");
}

/// Local ratio over claws: charge each claw found its minimum residual
/// weight, delete vertices whose residual hits zero, then drop deleted
/// vertices that are not needed (latest first).
inline Solution greedy_4_approx(const WeightedGraph& g) {
  const std::size_t n = g.num_vertices();
  ClawFinder finder(g);
  VertexSet removed(n);
  std::vector<Weight> residual(g.weights().begin(), g.weights().end());
  std::vector<Vertex> order;
  // Deleting vertices only destroys claws, so each center needs one visit.
  for (Vertex v = 0; v < n; ++v) {
    while (auto c = finder.find_centered(v, &removed)) {
      Weight eps = kInfiniteWeight;
      for (Vertex x : c->vertices()) eps = std::min(eps, residual[x]);
      for (Vertex x : c->vertices()) {
        residual[x] -= eps;
        if (residual[x] == 0 && !removed.contains(x)) {
          removed.insert(x);
          order.push_back(x);
        }
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    removed.erase(*it);
    if (finder.find_through(*it, &removed)) removed.insert(*it);
  }
  return make_solution(g, removed.members(), "approx");
}

}  // namespace clawfree
