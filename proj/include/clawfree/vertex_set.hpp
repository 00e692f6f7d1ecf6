#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "clawfree/types.hpp"

namespace clawfree {

/// Fixed-universe bitset of vertex indices 0..n-1.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
  VertexSet(std::size_t n, std::span<const Vertex> members) : VertexSet(n) {
    for (Vertex v : members) insert(v);
  }
  VertexSet(std::size_t n, std::initializer_list<Vertex> members) : VertexSet(n) {
    for (Vertex v : members) insert(v);
  }

  std::size_t universe() const noexcept { return n_; }

  bool contains(Vertex v) const noexcept {
    return v < n_ && (words_[v >> 6] >> (v & 63)) & 1u;
  }
  void insert(Vertex v) {
    check(v);
    words_[v >> 6] |= std::uint64_t{1} << (v & 63);
  }
  void erase(Vertex v) {
    check(v);
    words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }

  std::size_t size() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  /// Members in ascending order.
  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      for (std::uint64_t w = words_[i]; w; w &= w - 1)
        out.push_back(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
    }
    return out;
  }

  VertexSet& operator|=(const VertexSet& o) {
    if (o.n_ != n_) throw InvalidInput("vertex set universes differ");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  void check(Vertex v) const {
    if (v >= n_)
      throw InvalidInput("vertex " + std::to_string(v) + " out of range for universe of size " +
                         std::to_string(n_));
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace clawfree
