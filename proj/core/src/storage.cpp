#include "symtc/storage.hpp"

#include <algorithm>

namespace symtc {

PackedLayout::PackedLayout(TensorSignature sig) : sig_(std::move(sig)) {
  sig_.validate();
  if (!sig_.extentsKnown()) {
    throw ValidationError("packed layout for " + sig_.name +
                          " requires known extents");
  }
  // Parts as original dimension indices, members ascending; the symmetry
  // partition is already normalized that way, and its part order (by first
  // member's dimension) is the storage part order.
  for (const auto& part : sig_.symmetry.parts()) {
    std::vector<int> dims;
    dims.reserve(part.size());
    for (const auto& v : part) dims.push_back(sig_.dimOf(v));
    dim_parts_.push_back(std::move(dims));
  }
  total_size_ = 1;
  dense_size_ = 1;
  for (const auto& dims : dim_parts_) {
    for (int d : dims) storage_perm_.push_back(d);
    int p = static_cast<int>(dims.size());
    Coord n = sig_.extents[static_cast<std::size_t>(dims.front())];
    part_sizes_.push_back(p);
    part_extents_.push_back(n);
    total_size_ = checked_mul(total_size_, simplicial(p, n));
  }
  for (Coord n : sig_.extents) dense_size_ = checked_mul(dense_size_, n);
}

void PackedLayout::checkAccess(std::span<const Coord> coords) const {
  if (static_cast<int>(coords.size()) != order()) {
    throw ContractViolation("tensor " + sig_.name + ": expected " +
                            std::to_string(order()) + " coordinates, got " +
                            std::to_string(coords.size()));
  }
  for (std::size_t p = 0; p < dim_parts_.size(); ++p) {
    Coord prev = part_extents_[p];
    for (int d : dim_parts_[p]) {
      Coord c = coords[static_cast<std::size_t>(d)];
      if (c < 0 || c >= sig_.extents[static_cast<std::size_t>(d)]) {
        throw ContractViolation(
            "tensor " + sig_.name + ": coordinate " + std::to_string(c) +
            " out of bounds for dimension " +
            sig_.index_vars[static_cast<std::size_t>(d)] + " (extent " +
            std::to_string(sig_.extents[static_cast<std::size_t>(d)]) + ")");
      }
      if (c > prev) {
        std::string part = "{";
        for (std::size_t i = 0; i < dim_parts_[p].size(); ++i) {
          if (i > 0) part += ",";
          part += sig_.index_vars[static_cast<std::size_t>(dim_parts_[p][i])];
        }
        part += "}";
        throw ContractViolation(
            "tensor " + sig_.name + ": non-canonical access; coordinates of " +
            "symmetry part " + part + " must be non-increasing, got " +
            std::to_string(prev) + " before " + std::to_string(c));
      }
      prev = c;
    }
  }
}

std::int64_t PackedLayout::position(std::span<const Coord> coords) const {
  checkAccess(coords);
  // Sizes of the parts after part i, as one running product built backwards.
  std::size_t nparts = dim_parts_.size();
  std::vector<std::int64_t> tailSize(nparts + 1, 1);
  for (std::size_t i = nparts; i-- > 0;) {
    tailSize[i] =
        tailSize[i + 1] * simplicial(part_sizes_[i], part_extents_[i]);
  }
  std::int64_t pos = 0;
  for (std::size_t i = 0; i < nparts; ++i) {
    int p = part_sizes_[i];
    std::int64_t partOffset = 0;
    for (std::size_t j = 0; j < dim_parts_[i].size(); ++j) {
      Coord c = coords[static_cast<std::size_t>(dim_parts_[i][j])];
      partOffset += simplicial(p - static_cast<int>(j), c);
    }
    pos += partOffset * tailSize[i + 1];
  }
  return pos;
}

std::int64_t PackedLayout::position_incremental(
    std::span<const Coord> coords) const {
  checkAccess(coords);
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < dim_parts_.size(); ++i) {
    int p = part_sizes_[i];
    for (std::size_t j = 0; j < dim_parts_[i].size(); ++j) {
      Coord c = coords[static_cast<std::size_t>(dim_parts_[i][j])];
      if (j == 0) {
        acc = acc * simplicial(p, part_extents_[i]) + simplicial(p, c);
      } else {
        acc += simplicial(p - static_cast<int>(j), c);
      }
    }
  }
  return acc;
}

CanonicalCoords::CanonicalCoords(const PackedLayout& layout)
    : layout_(&layout),
      stored_(static_cast<std::size_t>(layout.order()), 0),
      coords_(static_cast<std::size_t>(layout.order()), 0) {
  valid_ = layout.totalSize() > 0;
}

Coord CanonicalCoords::maxAt(std::size_t slot) const {
  // First slot of a part ranges over the full extent; later slots may not
  // exceed the previous slot of the same part.
  std::size_t offset = 0;
  for (std::size_t p = 0; p < layout_->dimParts().size(); ++p) {
    std::size_t size = layout_->dimParts()[p].size();
    if (slot < offset + size) {
      if (slot == offset) return layout_->partExtents()[p] - 1;
      return stored_[slot - 1];
    }
    offset += size;
  }
  throw ContractViolation("canonical coordinate slot out of range");
}

void CanonicalCoords::advance() {
  if (!valid_) return;
  std::size_t n = stored_.size();
  std::size_t slot = n;
  while (slot-- > 0) {
    if (stored_[slot] < maxAt(slot)) {
      ++stored_[slot];
      for (std::size_t s = slot + 1; s < n; ++s) stored_[s] = 0;
      for (std::size_t s = 0; s < n; ++s) {
        coords_[static_cast<std::size_t>(layout_->storagePerm()[s])] =
            stored_[s];
      }
      return;
    }
  }
  valid_ = false;
}

bool nextDenseCoords(Coords& coords, std::span<const Coord> extents) {
  std::size_t d = coords.size();
  while (d-- > 0) {
    if (coords[d] + 1 < extents[d]) {
      ++coords[d];
      for (std::size_t k = d + 1; k < coords.size(); ++k) coords[k] = 0;
      return true;
    }
  }
  return false;
}

}  // namespace symtc
