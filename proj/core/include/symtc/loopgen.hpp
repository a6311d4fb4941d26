#pragma once

#include <map>
#include <string>
#include <vector>

#include "symtc/depgraph.hpp"
#include "symtc/expr.hpp"
#include "symtc/ordering.hpp"
#include "symtc/symmetry.hpp"

namespace symtc {

/// One side of a loop range. The strictness convention is fixed: zero lower
/// bounds are inclusive, variable lower bounds strict, variable upper bounds
/// inclusive, extent upper bounds exclusive. Region splits stay disjoint
/// because every tie lands in the inclusive-upper region.
struct Bound {
  enum class Kind { Zero, Extent, Var };

  Kind kind = Kind::Zero;
  std::string var;  // bounding variable (Var) or extent owner (Extent)
  bool strict = false;

  static Bound zero() { return Bound{Kind::Zero, "", false}; }
  static Bound extentOf(std::string v) {
    return Bound{Kind::Extent, std::move(v), true};
  }
  static Bound below(std::string v) {  // lower bound: var < loop variable
    return Bound{Kind::Var, std::move(v), true};
  }
  static Bound upTo(std::string v) {  // upper bound: loop variable <= var
    return Bound{Kind::Var, std::move(v), false};
  }

  bool operator==(const Bound&) const = default;
};

/// One canonicalized summand: the factors of a product term plus the
/// variables that must sit at zero for the term to fire. Guards appear only
/// when a term omits some of the statement's reduction variables, and pin
/// the omitted ones so the term is accumulated exactly once per assignment
/// of its own variables.
struct StatementTerm {
  int term_index = 0;
  std::vector<Access> factors;
  std::vector<std::string> guard_vars;

  bool operator==(const StatementTerm&) const = default;
};

/// The accumulate statement at a region's innermost level. All accesses are
/// canonical for every coordinate assignment the region permits.
struct StatementNode {
  Access output;
  bool accumulate = false;
  std::vector<StatementTerm> terms;
  /// Region context: for every variable, its placed ordering list (leftmost
  /// = smallest). Not part of structural equality; two regions with equal
  /// rewritten bodies merge.
  std::map<std::string, std::vector<std::string>> region;

  friend bool operator==(const StatementNode& a, const StatementNode& b) {
    return a.output == b.output && a.accumulate == b.accumulate &&
           a.terms == b.terms;
  }
};

/// A loop over one index variable. Bodies hold either nested loops or the
/// leaf statements, never both.
struct LoopNode {
  std::string var;
  Bound lower;
  Bound upper;
  std::vector<LoopNode> loops;
  std::vector<StatementNode> statements;

  bool operator==(const LoopNode&) const = default;
};

/// The complete compiled form of one statement: derived symmetries, the
/// intermediate representations, and the executable loop tree.
struct LoopNest {
  TensorStatement stmt;
  std::vector<TensorSignature> inputs;   // statement order
  TensorSignature output_sig;            // symmetry = derived output symmetry
  SymmetryPartition gcs_partition;
  IndexDependencyGraph graph;
  OrderingTree tree;
  LoopNode root;

  const TensorSignature& signatureOf(const std::string& tensor) const;

  /// Pseudocode form: "for j < k <= i" lines with indented statements.
  std::string printIr() const;
};

struct GenerateOptions {
  bool merge = true;
};

/// Runs the whole pipeline: greatest common symmetry, dependency graph,
/// ordering tree, bounds, canonical rewriting, and (by default) redundancy
/// merging. The output tensor is declared with the derived output symmetry;
/// statements accumulate when reduction variables exist and assign
/// otherwise. Fails loudly if some symmetric pair ends up unordered.
LoopNest generate(const TensorStatement& stmt,
                  const std::vector<TensorSignature>& inputs,
                  const GenerateOptions& options = {});

/// Permutes `access`'s variables within each symmetry part of `sig` so the
/// access is canonical everywhere in the region described by `placed_lists`
/// (variable -> its ordering list). Throws if a symmetric pair is unordered.
Access rewrite_access(
    const Access& access,
    const std::map<std::string, std::vector<std::string>>& placed_lists,
    const TensorSignature& sig);

/// Fuses adjacent sibling loops over the same variable whose bodies are
/// structurally identical and whose ranges are contiguous (inclusive upper
/// meeting a strict lower on the same variable), repeating to fixpoint.
void merge_redundant(LoopNode& node);
LoopNest merge_redundant(LoopNest nest);

}  // namespace symtc
