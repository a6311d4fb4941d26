#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace symtc {

struct TensorStatement;

using Coord = std::int64_t;
using Coords = std::vector<Coord>;

/// A partition of index variables into parts. Tensor-level partitions
/// describe which dimensions of one tensor may be permuted without changing
/// the value; computation-level partitions (the greatest common symmetry)
/// describe the same for a whole statement.
///
/// Partitions are kept in a normalized ordered form relative to a variable
/// universe: members of a part are sorted by their position in the universe
/// (dimension order for tensors, iteration order for computations) and parts
/// are sorted by the position of their first member. Equality is structural.
class SymmetryPartition {
public:
  SymmetryPartition() = default;

  /// Builds a partition of `universe` from `parts`. Parts must be non-empty,
  /// pairwise disjoint, and cover the universe exactly.
  SymmetryPartition(std::vector<std::vector<std::string>> parts,
                    std::vector<std::string> universe);

  static SymmetryPartition singletons(std::vector<std::string> vars);
  static SymmetryPartition onePart(std::vector<std::string> vars);

  const std::vector<std::vector<std::string>>& parts() const { return parts_; }
  const std::vector<std::string>& universe() const { return universe_; }

  /// Index of the part containing `var`, or -1 if the variable is absent.
  int partOf(const std::string& var) const;
  bool contains(const std::string& var) const { return partOf(var) >= 0; }
  bool samePart(const std::string& a, const std::string& b) const;

  bool trivial() const;  // all parts singletons

  /// Display form, e.g. "{i}{j,k}". Parts and members are printed in
  /// lexicographic order, matching the declaration syntax.
  std::string str() const;

  bool operator==(const SymmetryPartition&) const = default;

private:
  std::vector<std::vector<std::string>> parts_;
  std::vector<std::string> universe_;  // position order
};

/// Refinement s1 / s2: the coarsest partition of s1's variables in which two
/// variables share a part iff they share a part in s1 and either share a part
/// in s2 or are both absent from s2. The result is always a refinement of s1.
SymmetryPartition refine(const SymmetryPartition& s1,
                         const SymmetryPartition& s2);

/// One tensor's shape: name, index variables in dimension order, per-
/// dimension extents, and the symmetry partition over its variables.
/// Extents may be left unset (-1) until attached from the CLI or a file.
struct TensorSignature {
  std::string name;
  std::vector<std::string> index_vars;
  std::vector<Coord> extents;
  SymmetryPartition symmetry;

  int order() const { return static_cast<int>(index_vars.size()); }
  int dimOf(const std::string& var) const;
  Coord extentOf(const std::string& var) const;
  bool extentsKnown() const;

  /// Checks variable distinctness and, when extents are known, that all
  /// dimensions in one symmetry part have equal extent.
  void validate() const;

  bool operator==(const TensorSignature&) const = default;
};

/// Makes a signature with every extent set from `extents[var]`; validates.
TensorSignature withExtents(TensorSignature sig,
                            std::span<const std::pair<std::string, Coord>>);

/// True iff within every symmetry part of `sig`, coordinates are
/// non-increasing in dimension order. Throws ContractViolation on length or
/// bounds mismatch.
bool is_canonical(std::span<const Coord> coords, const TensorSignature& sig);

/// The unique canonical representative of `coords` under the tensor's
/// symmetry: each part's coordinate values sorted into non-increasing order,
/// other dimensions untouched. Idempotent.
Coords canonicalize(std::span<const Coord> coords, const TensorSignature& sig);

/// Greatest common symmetry of a statement: starting from the one-part
/// partition of all statement variables, refine by every input symmetry and
/// by the output treated as fully symmetric over its own variables.
SymmetryPartition gcs(const TensorStatement& stmt,
                      const std::vector<TensorSignature>& inputs);

/// Derived output symmetry {O} / gcs, a partition of the output variables.
SymmetryPartition output_symmetry(const TensorStatement& stmt,
                                  const SymmetryPartition& g);

}  // namespace symtc
