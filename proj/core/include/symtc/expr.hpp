#pragma once

#include <map>
#include <string>
#include <vector>

#include "symtc/symmetry.hpp"

namespace symtc {

struct SourceSpan {
  int line = 1;
  int column = 1;
};

/// One tensor access, e.g. A[i,j,k]. Index variables are distinct within an
/// access; repeated variables are rejected at parse time.
struct Access {
  std::string tensor;
  std::vector<std::string> vars;
  SourceSpan span{};

  std::string str() const;

  friend bool operator==(const Access& a, const Access& b) {
    return a.tensor == b.tensor && a.vars == b.vars;
  }
};

/// A product of accesses; one summand of the right-hand side.
struct Term {
  std::vector<Access> factors;

  /// All variables of the term, in first-appearance order.
  std::vector<std::string> vars() const;

  friend bool operator==(const Term& a, const Term& b) {
    return a.factors == b.factors;
  }
};

/// A parsed assignment `out[...] = t1 + t2 + ...` where each term is a
/// product of accesses. Variables in inputs but not in the output are
/// implicitly summed, einsum style.
struct TensorStatement {
  Access output;
  std::vector<Term> terms;

  /// All statement variables in first-appearance order; this is the
  /// iteration order used throughout code generation.
  std::vector<std::string> var_order;

  std::vector<const Access*> inputAccesses() const;
  std::vector<std::string> inputTensorNames() const;

  /// Variables summed over (present in some term but not in the output).
  std::vector<std::string> reductionVars() const;
  /// Variables of `term` not in the output access.
  std::vector<std::string> reductionVarsOf(const Term& term) const;

  /// Canonical printed form, e.g. "C[i,k] = A[i,j] * B[j,k]".
  std::string str() const;

  friend bool operator==(const TensorStatement& a, const TensorStatement& b) {
    return a.output == b.output && a.terms == b.terms;
  }
};

/// Parses `stmt := access '=' product ('+' product)*`. Rejects repeated
/// variables within an access, output variables missing from a term, and a
/// tensor name used by more than one access.
TensorStatement parse_statement(const std::string& text);

/// Parses symmetry declarations `NAME ':' ('{' var (',' var)* '}')+`
/// separated by ';' and returns complete signatures for all input tensors of
/// `stmt` in statement order. Unlisted variables become singleton parts;
/// unlisted tensors are non-symmetric. Extents are left unset.
std::vector<TensorSignature> parse_symmetries(const std::string& text,
                                              const TensorStatement& stmt);

/// Parses "i=4,j=4" into an extent map.
std::map<std::string, Coord> parse_extents(const std::string& text);

/// Fills every signature's extents from the map and validates them,
/// including equal extents within symmetry parts.
std::vector<TensorSignature> attach_extents(
    std::vector<TensorSignature> sigs,
    const std::map<std::string, Coord>& extents);

/// Validates that extents declared in the input signatures agree for shared
/// variables (no-op for signatures with unset extents).
void checkExtentConsistency(const TensorStatement& stmt,
                            const std::vector<TensorSignature>& inputs);

}  // namespace symtc
