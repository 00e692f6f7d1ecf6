// Minimal library walk-through: build a graph, solve it, check the answer.

#include <iostream>

#include "clawfree/clawfree.hpp"

int main() {
  using namespace clawfree;

  // A claw (center 0) with a pendant path hanging off leaf 3.
  GraphBuilder b(6);
  b.add_edge(0, 1).add_edge(0, 2).add_edge(0, 3).add_edge(3, 4).add_edge(4, 5);
  b.set_weight(0, 4);
  WeightedGraph g = std::move(b).build();

  if (auto w = find_claw(g)) std::cout << "claw centered at " << w->center << '\n';

  SolveReport r = dispatch(g);
  std::cout << "solver " << r.solver << ", weight " << r.weight << ", deleted";
  for (const auto& l : r.labels) std::cout << ' ' << l;
  std::cout << '\n';

  // Same instance through the treewidth DP with an explicit decomposition.
  Solution tw = solve_treewidth(g, make_nice(heuristic_decomposition(g)));
  std::cout << "treewidth DP weight " << tw.weight << (verify_solution(g, tw.vertices) ? " (verified)" : "") << '\n';

  std::cout << "full binary tree of height 4 needs " << cdn_full_tree(2, 4) << " deletions\n";
  return r.verified == true ? 0 : 1;
}
