#pragma once

#include <span>
#include <string>
#include <vector>

#include "symtc/error.hpp"
#include "symtc/simplicial.hpp"
#include "symtc/symmetry.hpp"

namespace symtc {

/// Storage metadata for a packed symmetric tensor: one value per canonical
/// coordinate orbit.
///
/// The position formulas require the stored dimension order to follow the
/// symmetry, so every layout carries a storage permutation that places each
/// symmetry part's dimensions contiguously (parts ordered by their smallest
/// original dimension index, members in original dimension order). All file
/// I/O states the permutation explicitly.
class PackedLayout {
public:
  PackedLayout() = default;
  explicit PackedLayout(TensorSignature sig);

  const TensorSignature& signature() const { return sig_; }
  const std::vector<Coord>& extents() const { return sig_.extents; }
  int order() const { return sig_.order(); }

  /// storage slot -> original dimension index.
  const std::vector<int>& storagePerm() const { return storage_perm_; }
  /// Per part: original dimension indices, ascending.
  const std::vector<std::vector<int>>& dimParts() const { return dim_parts_; }
  /// Per part: number of dimensions p_i.
  const std::vector<int>& partSizes() const { return part_sizes_; }
  /// Per part: the common extent N_i.
  const std::vector<Coord>& partExtents() const { return part_extents_; }

  /// Number of stored values: prod over parts of s_{p_i}(N_i).
  std::int64_t totalSize() const { return total_size_; }
  /// Number of values of the corresponding dense tensor.
  std::int64_t denseSize() const { return dense_size_; }

  /// Offset of canonical `coords` (given in original dimension order) into
  /// the packed value array, evaluated as the per-part sum of simplicial
  /// terms scaled by the sizes of later parts. The map over all canonical
  /// coordinates is a bijection onto [0, totalSize()). Throws
  /// ContractViolation for non-canonical or out-of-bounds coordinates,
  /// naming the offending part.
  std::int64_t position(std::span<const Coord> coords) const;

  /// Same contract as position(), computed by the incremental recurrence
  /// that generated code inlines: across parts I = I * s_p(N) + s_p(c_first),
  /// within a part I += s_{p-j+1}(c_j).
  std::int64_t position_incremental(std::span<const Coord> coords) const;

  bool operator==(const PackedLayout&) const = default;

private:
  void checkAccess(std::span<const Coord> coords) const;

  TensorSignature sig_;
  std::vector<int> storage_perm_;
  std::vector<std::vector<int>> dim_parts_;
  std::vector<int> part_sizes_;
  std::vector<Coord> part_extents_;
  std::int64_t total_size_ = 0;
  std::int64_t dense_size_ = 0;
};

/// Enumerates the canonical coordinates of a layout in strictly increasing
/// position order, starting at position 0.
class CanonicalCoords {
public:
  explicit CanonicalCoords(const PackedLayout& layout);

  bool valid() const { return valid_; }
  /// Current coordinates in original dimension order.
  const Coords& coords() const { return coords_; }
  void advance();

private:
  Coord maxAt(std::size_t slot) const;

  const PackedLayout* layout_;
  Coords stored_;  // storage order
  Coords coords_;  // original order
  bool valid_ = false;
};

/// Dense row-major tensor.
template <typename T>
struct DenseTensor {
  std::vector<Coord> extents;
  std::vector<T> values;

  std::int64_t size() const {
    std::int64_t n = 1;
    for (Coord e : extents) n = checked_mul(n, e);
    return n;
  }

  std::int64_t offset(std::span<const Coord> coords) const {
    if (coords.size() != extents.size()) {
      throw ContractViolation("dense tensor: coordinate count mismatch");
    }
    std::int64_t off = 0;
    for (std::size_t d = 0; d < extents.size(); ++d) {
      if (coords[d] < 0 || coords[d] >= extents[d]) {
        throw ContractViolation("dense tensor: coordinate out of bounds");
      }
      off = off * extents[d] + coords[d];
    }
    return off;
  }

  T at(std::span<const Coord> coords) const {
    return values[static_cast<std::size_t>(offset(coords))];
  }
  T& at(std::span<const Coord> coords) {
    return values[static_cast<std::size_t>(offset(coords))];
  }

  bool operator==(const DenseTensor&) const = default;
};

/// Fully deduplicated symmetric tensor: flat value array indexed by
/// PackedLayout::position. Only canonical coordinates may be accessed.
template <typename T>
struct PackedTensor {
  PackedLayout layout;
  std::vector<T> values;

  static PackedTensor zeros(PackedLayout l) {
    std::vector<T> v(static_cast<std::size_t>(l.totalSize()), T{});
    return PackedTensor{std::move(l), std::move(v)};
  }

  T at(std::span<const Coord> coords) const {
    return values[static_cast<std::size_t>(layout.position_incremental(coords))];
  }

  bool operator==(const PackedTensor&) const = default;
};

/// Advances `coords` through the full dense row-major coordinate space.
/// Returns false when the space is exhausted.
bool nextDenseCoords(Coords& coords, std::span<const Coord> extents);

/// Packs a dense tensor, checking that its values actually satisfy the
/// declared symmetry; the first disagreeing orbit is reported with both
/// coordinates and both values.
template <typename T>
PackedTensor<T> pack(const DenseTensor<T>& dense, const TensorSignature& sig) {
  PackedLayout layout{sig};
  if (dense.extents != sig.extents) {
    throw ValidationError("pack: dense extents do not match signature of " +
                          sig.name);
  }
  if (static_cast<std::int64_t>(dense.values.size()) != layout.denseSize()) {
    throw ValidationError("pack: dense value count mismatch for " + sig.name);
  }
  auto packed = PackedTensor<T>::zeros(layout);
  if (layout.denseSize() == 0) return packed;

  Coords coords(static_cast<std::size_t>(sig.order()), 0);
  do {
    Coords canon = canonicalize(coords, sig);
    T value = dense.at(coords);
    T canonValue = dense.at(canon);
    if (value != canonValue) {
      auto fmt = [](const Coords& c) {
        std::string s = "(";
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (i > 0) s += ",";
          s += std::to_string(c[i]);
        }
        return s + ")";
      };
      throw ValidationError(
          "pack: tensor " + sig.name + " violates its declared symmetry " +
          sig.symmetry.str() + ": value at " + fmt(coords) + " is " +
          std::to_string(value) + " but value at canonical " + fmt(canon) +
          " is " + std::to_string(canonValue));
    }
    if (canon == coords) {
      packed.values[static_cast<std::size_t>(layout.position(coords))] = value;
    }
  } while (nextDenseCoords(coords, sig.extents));
  return packed;
}

/// Expands a packed tensor to its dense row-major form; inverse of pack.
template <typename T>
DenseTensor<T> unpack(const PackedTensor<T>& packed) {
  const TensorSignature& sig = packed.layout.signature();
  DenseTensor<T> dense;
  dense.extents = sig.extents;
  dense.values.resize(static_cast<std::size_t>(packed.layout.denseSize()));
  if (dense.values.empty()) return dense;

  Coords coords(static_cast<std::size_t>(sig.order()), 0);
  do {
    Coords canon = canonicalize(coords, sig);
    dense.at(coords) = packed.values[static_cast<std::size_t>(
        packed.layout.position(canon))];
  } while (nextDenseCoords(coords, sig.extents));
  return dense;
}

}  // namespace symtc
