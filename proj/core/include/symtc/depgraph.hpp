#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symtc/symmetry.hpp"

namespace symtc {

/// Forest of parent edges over index variables recording which relative
/// coordinate orderings the loop structure must case-split on. Two variables
/// can share a parent, but a variable has at most one parent, and following
/// parents always moves earlier in iteration order.
struct IndexDependencyGraph {
  std::vector<std::string> vars;               // iteration order
  std::map<std::string, std::string> parent;  // child -> parent

  int pos(const std::string& var) const;
  std::optional<std::string> parentOf(const std::string& var) const;
  /// Root of the parent chain containing `var` (possibly `var` itself).
  std::string chainRoot(const std::string& var) const;
  /// The chain from `var` up to its root: var, parent, grandparent, ...
  std::vector<std::string> chain(const std::string& var) const;

  /// True iff one of a, b is an ancestor of the other, so the loop regions
  /// will totally order their coordinate values.
  bool orderKnown(const std::string& a, const std::string& b) const;

  /// "child -> parent" lines in iteration order of the child.
  std::string str() const;
};

/// Builds the graph from the input symmetries: for each part of each input
/// (members sorted into iteration order), each member is linked to its list
/// predecessor; when a variable already has a different parent, the later of
/// the two candidates stays its parent and the chain root above it is linked
/// to the earlier one, recursively.
IndexDependencyGraph build_dependency_graph(
    const std::vector<std::string>& vars,
    const std::vector<SymmetryPartition>& input_syms);

/// Symmetric pairs the graph failed to totally order (empty in every case
/// the generator supports; non-empty is surfaced as an error before any
/// rewriting).
std::vector<std::pair<std::string, std::string>> unorderedSymmetricPairs(
    const IndexDependencyGraph& g,
    const std::vector<SymmetryPartition>& input_syms);

}  // namespace symtc
