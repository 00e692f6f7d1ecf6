#pragma once

// Weighted claw-deletion over a nice tree decomposition.
//
// A state at node t describes a partial solution on G[V_t] (V_t = vertices of
// the subtree's bags) restricted to the bag X_t:
//   S  deleted bag vertices
//   A  kept, no kept neighbour among forgotten vertices
//   B  kept, kept forgotten neighbours form a non-empty clique
//   C  kept, two non-adjacent kept forgotten neighbours
//   Z  ordered pairs (x, y), xy an edge, with a kept forgotten w adjacent to
//      y but not to x
// and the value is the least weight of a deletion set of G[V_t] that leaves
// it claw-free and produces this signature.
//
// Bag vertices are kept in fixed per-vertex slots, so sets are bitmasks and
// Z is a bitmask over slot pairs (x * stride + y).

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <tuple>
#include <vector>

#include "clawfree/graph.hpp"
#include "clawfree/solution.hpp"
#include "clawfree/tree_decomposition.hpp"

namespace clawfree {

struct TreewidthOptions {
  bool weight_only = false;
  /// Raise ResourceError when one node would hold more states than this.
  std::size_t max_states = 20'000'000;
  /// Keep every node's full table (for inspection via treewidth_tables()).
  bool keep_tables = false;
  /// Apply only the transition rules as originally published: no leaf-side
  /// check on introduce and no cross-child checks on join. These rules miss
  /// some claws; the option exists for comparison.
  bool published_rules = false;
  bool validate = true;
};

/// One stored table entry, expressed over graph vertices.
struct StateSignature {
  std::vector<Vertex> S, A, B, C;
  std::vector<std::pair<Vertex, Vertex>> Z;  // sorted
  Weight value = 0;

  friend bool operator==(const StateSignature&, const StateSignature&) = default;
  friend auto operator<=>(const StateSignature&, const StateSignature&) = default;
};

namespace detail {

template <class Z>
struct ZLayout;

template <>
struct ZLayout<std::uint64_t> {
  static constexpr unsigned stride = 8;
};

template <>
struct ZLayout<unsigned __int128> {
  static constexpr unsigned stride = 11;
};

template <class Z>
class TreewidthDP {
 public:
  static constexpr unsigned kStride = ZLayout<Z>::stride;
  using Mask = std::uint16_t;

  struct Key {
    Mask s, a, b;
    Z z;
    friend bool operator==(const Key& x, const Key& y) {
      return x.s == y.s && x.a == y.a && x.b == y.b && x.z == y.z;
    }
    friend bool operator<(const Key& x, const Key& y) {
      return std::tie(x.s, x.a, x.b, x.z) < std::tie(y.s, y.a, y.b, y.z);
    }
  };

  TreewidthDP(const WeightedGraph& g, const NiceTreeDecomposition& ntd, const TreewidthOptions& opt)
      : g_(g), ntd_(ntd), opt_(opt) {
    assign_slots();
  }

  Solution run() {
    const std::size_t nn = ntd_.nodes.size();
    tables_.assign(nn, {});
    for (std::uint32_t t = 0; t < nn; ++t) {
      const NiceNode& x = ntd_.nodes[t];
      setup_node(t);
      switch (x.kind) {
        case NiceKind::Leaf: leaf(t); break;
        case NiceKind::Introduce: introduce(t); break;
        case NiceKind::Forget: forget(t); break;
        case NiceKind::Join: join(t); break;
      }
      if (!opt_.keep_tables) {
        release(x.left);
        release(x.right);
      }
    }
    const Table& root = tables_.back();
    if (root.keys.size() != 1) throw std::logic_error("treewidth DP: root table has no single empty state");
    Solution sol;
    sol.solver = "treewidth";
    sol.weight = root.vals[0];
    if (opt_.weight_only) {
      sol.has_set = false;
      return sol;
    }
    std::vector<Vertex> set;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{static_cast<std::uint32_t>(nn - 1), 0}};
    while (!stack.empty()) {
      auto [t, i] = stack.back();
      stack.pop_back();
      const NiceNode& x = ntd_.nodes[t];
      const Table& tab = tables_[t];
      for (Vertex v : x.bag)
        if (tab.s_mask[i] >> slot_[v] & 1u) set.push_back(v);
      if (x.left != NiceNode::kNoNode32) stack.emplace_back(x.left, tab.from1[i]);
      if (x.right != NiceNode::kNoNode32) stack.emplace_back(x.right, tab.from2[i]);
    }
    Solution out = make_solution(g_, std::move(set), "treewidth");
    if (out.weight != sol.weight) throw std::logic_error("treewidth DP: reconstructed weight mismatch");
    return out;
  }

  std::vector<std::vector<StateSignature>> signatures() const {
    std::vector<std::vector<StateSignature>> out(tables_.size());
    for (std::size_t t = 0; t < tables_.size(); ++t) {
      const auto& bag = ntd_.nodes[t].bag;
      for (std::size_t i = 0; i < tables_[t].keys.size(); ++i) {
        const Key& k = tables_[t].keys[i];
        StateSignature sig;
        sig.value = tables_[t].vals[i];
        for (Vertex v : bag) {
          const unsigned p = slot_[v];
          if (k.s >> p & 1u) sig.S.push_back(v);
          else if (k.a >> p & 1u) sig.A.push_back(v);
          else if (k.b >> p & 1u) sig.B.push_back(v);
          else sig.C.push_back(v);
          for (Vertex u : bag)
            if (k.z >> (p * kStride + slot_[u]) & 1u) sig.Z.emplace_back(v, u);
        }
        std::sort(sig.Z.begin(), sig.Z.end());
        out[t].push_back(std::move(sig));
      }
    }
    return out;
  }

 private:
  struct Table {
    std::vector<Key> keys;  // sorted
    std::vector<Weight> vals;
    std::vector<Mask> s_mask;
    std::vector<std::uint32_t> from1, from2;
  };

  struct Candidate {
    Key key;
    Weight val;
    std::uint32_t from1, from2;
  };

  static Z zbit(unsigned x, unsigned y) { return Z{1} << (x * kStride + y); }

  void assign_slots() {
    const std::size_t n = g_.num_vertices();
    slot_.assign(n, kNoSlot);
    unsigned used = 0;
    for (std::size_t t = ntd_.nodes.size(); t-- > 0;) {
      const auto& bag = ntd_.nodes[t].bag;
      std::uint32_t taken = 0;
      for (Vertex v : bag)
        if (slot_[v] != kNoSlot) taken |= 1u << slot_[v];
      for (Vertex v : bag) {
        if (slot_[v] != kNoSlot) continue;
        unsigned p = static_cast<unsigned>(std::countr_one(taken));
        if (p >= kStride) throw ResourceError("treewidth DP: bag too large for the state encoding");
        slot_[v] = static_cast<std::uint8_t>(p);
        taken |= 1u << p;
        used = std::max(used, p + 1);
      }
    }
    slots_ = used;
  }

  void setup_node(std::uint32_t t) {
    const auto& bag = ntd_.nodes[t].bag;
    bag_mask_ = 0;
    adj_.fill(0);
    for (Vertex v : bag) bag_mask_ |= Mask(1u << slot_[v]);
    for (std::size_t i = 0; i < bag.size(); ++i)
      for (std::size_t j = i + 1; j < bag.size(); ++j)
        if (g_.adjacent(bag[i], bag[j])) {
          adj_[slot_[bag[i]]] |= Mask(1u << slot_[bag[j]]);
          adj_[slot_[bag[j]]] |= Mask(1u << slot_[bag[i]]);
        }
  }

  static bool has_nonadjacent_pair(Mask m, const std::array<Mask, 16>& adj) {
    for (Mask r = m; r; r &= r - 1) {
      unsigned x = std::countr_zero(r);
      if (m & ~adj[x] & ~Mask(1u << x)) return true;
    }
    return false;
  }

  static bool has_independent_triple(Mask m, const std::array<Mask, 16>& adj) {
    for (Mask r = m; r; r &= r - 1) {
      unsigned x = std::countr_zero(r);
      Mask rest = m & ~adj[x] & Mask(~((2u << x) - 1));
      for (Mask q = rest; q; q &= q - 1) {
        unsigned y = std::countr_zero(q);
        if (rest & ~adj[y] & Mask(~((2u << y) - 1))) return true;
      }
    }
    return false;
  }

  void leaf(std::uint32_t t) {
    Table& tab = tables_[t];
    tab.keys.push_back({0, 0, 0, Z{0}});
    tab.vals.push_back(0);
    if (!opt_.weight_only) {
      tab.s_mask.push_back(0);
      tab.from1.push_back(0);
    }
  }

  void introduce(std::uint32_t t) {
    const NiceNode& x = ntd_.nodes[t];
    const Table& child = tables_[x.left];
    const unsigned p = slot_[x.vertex];
    const Mask pb = Mask(1u << p);
    const Mask nv = adj_[p];
    const Mask child_bag = bag_mask_ & ~pb;
    const Weight wv = g_.weight(x.vertex);

    // (x, y) in Z with x not adjacent to v and y adjacent to v
    Z forbid{0};
    for (Mask r = child_bag & nv; r; r &= r - 1)
      for (Mask q = child_bag & ~nv; q; q &= q - 1)
        forbid |= zbit(std::countr_zero(q), std::countr_zero(r));

    // keep-v feasibility depending only on the kept bag vertices
    std::vector<std::int8_t> memo(std::size_t{1} << slots_, -1);
    auto keep_ok = [&](Mask alive) {
      auto& m = memo[alive];
      if (m < 0) {
        bool ok = !has_independent_triple(alive & nv, adj_);
        if (ok && !opt_.published_rules)
          for (Mask r = alive & nv; r && ok; r &= r - 1) {
            unsigned y = std::countr_zero(r);
            ok = !has_nonadjacent_pair(alive & adj_[y] & ~nv & ~pb, adj_);
          }
        m = ok;
      }
      return m == 1;
    };

    cands_.clear();
    for (std::uint32_t i = 0; i < child.keys.size(); ++i) {
      const Key& k = child.keys[i];
      const Weight val = child.vals[i];
      cands_.push_back({{Mask(k.s | pb), k.a, k.b, k.z}, checked_add(val, wv), i, 0});
      const Mask alive = child_bag & ~k.s;
      const Mask c = alive & ~k.a & ~k.b;
      if (!keep_ok(alive) || (k.z & forbid) || (nv & c)) continue;
      Z z = k.z;
      for (Mask r = nv & (k.b | c); r; r &= r - 1) z |= zbit(p, std::countr_zero(r));
      cands_.push_back({{k.s, Mask(k.a | pb), k.b, z}, val, i, 0});
    }
    commit(t);
  }

  void forget(std::uint32_t t) {
    const NiceNode& x = ntd_.nodes[t];
    const Table& child = tables_[x.left];
    const unsigned p = slot_[x.vertex];
    const Mask pb = Mask(1u << p);
    const Mask nv = adj_child(x);
    Z touching{0};
    for (unsigned q = 0; q < kStride; ++q) touching |= zbit(p, q) | zbit(q, p);

    cands_.clear();
    for (std::uint32_t i = 0; i < child.keys.size(); ++i) {
      const Key& k = child.keys[i];
      const Weight val = child.vals[i];
      if (k.s & pb) {
        cands_.push_back({{Mask(k.s & ~pb), k.a, k.b, k.z}, val, i, 0});
        continue;
      }
      const Mask alive = bag_mask_ & ~k.s;
      Mask moved = 0;
      for (Mask r = k.b; r; r &= r - 1) {
        unsigned y = std::countr_zero(r);
        if (k.z & zbit(p, y)) moved |= Mask(1u << y);
      }
      const Mask a = k.a & ~nv & ~pb;
      const Mask b = ((k.b & ~moved) | (k.a & nv)) & ~pb;
      Z z = k.z & ~touching;
      for (Mask r = alive & nv; r; r &= r - 1) {
        unsigned y = std::countr_zero(r);
        for (Mask q = alive & adj_[y] & ~nv; q; q &= q - 1) z |= zbit(std::countr_zero(q), y);
      }
      cands_.push_back({{k.s, a, b, z}, val, i, 0});
    }
    commit(t);
  }

  // Neighbours of the forgotten vertex among the remaining bag vertices.
  Mask adj_child(const NiceNode& x) const {
    Mask nv = 0;
    for (Vertex u : x.bag)
      if (g_.adjacent(u, x.vertex)) nv |= Mask(1u << slot_[u]);
    return nv;
  }

  void join(std::uint32_t t) {
    const NiceNode& x = ntd_.nodes[t];
    const Table& L = tables_[x.left];
    const Table& R = tables_[x.right];
    cands_.clear();
    // both tables are sorted by key, so equal S values form contiguous runs
    std::size_t j0 = 0;
    for (std::uint32_t i = 0; i < L.keys.size();) {
      const Mask s = L.keys[i].s;
      std::uint32_t i1 = i;
      while (i1 < L.keys.size() && L.keys[i1].s == s) ++i1;
      while (j0 < R.keys.size() && R.keys[j0].s < s) ++j0;
      std::size_t j1 = j0;
      while (j1 < R.keys.size() && R.keys[j1].s == s) ++j1;
      Weight ws = 0;
      for (Vertex v : x.bag)
        if (s >> slot_[v] & 1u) ws += g_.weight(v);
      const Mask alive = bag_mask_ & ~s;
      for (std::uint32_t li = i; li < i1; ++li) {
        const Key& l = L.keys[li];
        const Mask lc = alive & ~l.a & ~l.b;
        for (std::size_t rj = j0; rj < j1; ++rj) {
          const Key& r = R.keys[rj];
          const Mask rc = alive & ~r.a & ~r.b;
          if (!opt_.published_rules && ((lc & ~r.a) || (rc & ~l.a) || (l.z & r.z))) continue;
          const Mask a = l.a & r.a;
          const Mask b = Mask((l.a & r.b) | (l.b & r.a));
          cands_.push_back({{s, a, b, Z(l.z | r.z)}, checked_add(L.vals[li], R.vals[rj]) - ws, li,
                            static_cast<std::uint32_t>(rj)});
        }
        if (cands_.size() > opt_.max_states * 4) budget_exceeded();
      }
      i = i1;
      j0 = j1;
    }
    commit(t);
  }

  [[noreturn]] void budget_exceeded() const {
    throw ResourceError("treewidth DP: state budget of " + std::to_string(opt_.max_states) +
                        " exceeded (decomposition too wide)");
  }

  void commit(std::uint32_t t) {
    std::sort(cands_.begin(), cands_.end(), [](const Candidate& x, const Candidate& y) {
      if (!(x.key == y.key)) return x.key < y.key;
      return std::tie(x.val, x.from1, x.from2) < std::tie(y.val, y.from1, y.from2);
    });
    Table& tab = tables_[t];
    for (std::size_t i = 0; i < cands_.size(); ++i) {
      if (i && cands_[i].key == cands_[i - 1].key) continue;
      const Candidate& c = cands_[i];
      tab.keys.push_back(c.key);
      tab.vals.push_back(c.val);
      if (!opt_.weight_only) {
        tab.s_mask.push_back(c.key.s);
        tab.from1.push_back(c.from1);
        if (ntd_.nodes[t].kind == NiceKind::Join) tab.from2.push_back(c.from2);
      }
    }
    if (tab.keys.size() > opt_.max_states) budget_exceeded();
  }

  // Drops what reconstruction does not need once the parent is built.
  void release(std::uint32_t t) {
    if (t == NiceNode::kNoNode32) return;
    Table& tab = tables_[t];
    std::vector<Key>().swap(tab.keys);
    std::vector<Weight>().swap(tab.vals);
    if (opt_.weight_only) {
      std::vector<Mask>().swap(tab.s_mask);
      std::vector<std::uint32_t>().swap(tab.from1);
      std::vector<std::uint32_t>().swap(tab.from2);
    }
  }

  static constexpr std::uint8_t kNoSlot = 0xff;

  const WeightedGraph& g_;
  const NiceTreeDecomposition& ntd_;
  TreewidthOptions opt_;
  std::vector<std::uint8_t> slot_;
  unsigned slots_ = 0;
  std::vector<Table> tables_;
  std::vector<Candidate> cands_;
  Mask bag_mask_ = 0;
  std::array<Mask, 16> adj_{};
};

template <class F>
decltype(auto) with_treewidth_dp(const WeightedGraph& g, const NiceTreeDecomposition& ntd,
                                 const TreewidthOptions& opt, F&& f) {
  if (opt.validate) validate_nice(ntd, g);
  const std::size_t bag = ntd.max_bag_size();
  if (bag <= ZLayout<std::uint64_t>::stride) {
    TreewidthDP<std::uint64_t> dp(g, ntd, opt);
    return f(dp);
  }
  if (bag <= ZLayout<unsigned __int128>::stride) {
    TreewidthDP<unsigned __int128> dp(g, ntd, opt);
    return f(dp);
  }
  throw ResourceError("treewidth DP: width " + std::to_string(bag - 1) + " exceeds the supported maximum of " +
                      std::to_string(ZLayout<unsigned __int128>::stride - 1));
}

}  // namespace detail

/// Largest decomposition width the DP accepts.
inline constexpr std::size_t kMaxTreewidth = detail::ZLayout<unsigned __int128>::stride - 1;

inline Solution solve_treewidth(const WeightedGraph& g, const NiceTreeDecomposition& ntd,
                                const TreewidthOptions& opt = {}) {
  return detail::with_treewidth_dp(g, ntd, opt, [](auto& dp) { return dp.run(); });
}

/// Decomposes with the min-fill heuristic first.
inline Solution solve_treewidth(const WeightedGraph& g, const TreewidthOptions& opt = {}) {
  auto td = heuristic_decomposition(g, kMaxTreewidth);
  if (!td) throw ResourceError("solve_treewidth: heuristic width exceeds " + std::to_string(kMaxTreewidth));
  return solve_treewidth(g, make_nice(*td), opt);
}

/// Every node's table, as vertex-level signatures sorted per node.
inline std::vector<std::vector<StateSignature>> treewidth_tables(const WeightedGraph& g,
                                                                 const NiceTreeDecomposition& ntd,
                                                                 TreewidthOptions opt = {}) {
  opt.keep_tables = true;
  opt.weight_only = true;
  return detail::with_treewidth_dp(g, ntd, opt, [](auto& dp) {
    dp.run();
    auto sigs = dp.signatures();
    for (auto& node : sigs) std::sort(node.begin(), node.end());
    return sigs;
  });
}

}  // namespace clawfree
