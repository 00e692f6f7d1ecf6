#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "clawfree/claw.hpp"
#include "clawfree/graph.hpp"

namespace clawfree {

/// A claw-deletion set with its weight and provenance.
///
/// `vertices` is sorted ascending. When a solver ran in weight-only mode
/// `has_set` is false and `vertices` is empty. `verified` stays empty until
/// certify() runs the claw checker on the set.
struct Solution {
  std::vector<Vertex> vertices;
  Weight weight = 0;
  std::string solver;
  bool has_set = true;
  std::optional<bool> verified;

  std::size_t size() const noexcept { return vertices.size(); }
};

inline Solution make_solution(const WeightedGraph& g, std::vector<Vertex> vertices, std::string solver) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  Solution s;
  s.weight = g.weight_of(vertices);
  s.vertices = std::move(vertices);
  s.solver = std::move(solver);
  return s;
}

/// Runs verify_solution on the set and records the outcome.
inline Solution& certify(const WeightedGraph& g, Solution& s) {
  if (s.has_set) s.verified = verify_solution(g, s.vertices);
  return s;
}

}  // namespace clawfree
