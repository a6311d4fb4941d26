#pragma once

#include <string>
#include <vector>

#include "symtc/depgraph.hpp"
#include "symtc/symmetry.hpp"

namespace symtc {

/// One relative-order region of a variable's coordinate against its chain
/// ancestors. `placed` lists the focus variable plus all its dependency-chain
/// ancestors, leftmost = smallest coordinate value; [j, i] is the region
/// j <= i iterated over the focus variable.
struct OrderingNode {
  std::string focus;
  std::vector<std::string> placed;
  std::vector<OrderingNode> children;

  int focusIndex() const;  // position of focus within placed
};

/// Enumeration of the relative-order regions, one level per index variable
/// in iteration order. The loop nest mirrors this tree one-to-one.
struct OrderingTree {
  std::vector<std::string> level_vars;  // iteration order
  OrderingNode root;

  int nodeCount() const;
  /// Indented bracket listing, e.g. "[i]\n  [j, i]\n    [k, j, i]\n...".
  std::string listing() const;
};

/// Builds the tree: the first variable gets its trivial ordering; each
/// subsequent variable with a graph parent spawns one child per insertion
/// position into the parent variable's ordering list, and parentless
/// variables spawn a single full-range node. Orderings that place a
/// gcs-part's earlier variable strictly before a later one are pruned.
OrderingTree build_ordering_tree(const IndexDependencyGraph& graph,
                                 const SymmetryPartition& gcs);

}  // namespace symtc
