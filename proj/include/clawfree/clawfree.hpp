#pragma once

#include "clawfree/types.hpp"
#include "clawfree/vertex_set.hpp"
#include "clawfree/graph.hpp"
#include "clawfree/graph_io.hpp"
#include "clawfree/block_cut_tree.hpp"
#include "clawfree/claw.hpp"
#include "clawfree/solution.hpp"
#include "clawfree/forest.hpp"
#include "clawfree/block_solver.hpp"
#include "clawfree/tree_decomposition.hpp"
#include "clawfree/treewidth_solver.hpp"
#include "clawfree/baselines.hpp"
#include "clawfree/generators.hpp"
#include "clawfree/dispatch.hpp"
