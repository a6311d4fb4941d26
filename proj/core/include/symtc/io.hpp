#pragma once

#include <map>
#include <string>
#include <variant>

#include "symtc/oracle.hpp"
#include "symtc/storage.hpp"

namespace symtc {

/// A loaded tensor file; the scalar kind is inferred from the JSON values
/// (all integers -> int64, otherwise float64).
using AnyPackedTensor =
    std::variant<PackedTensor<std::int64_t>, PackedTensor<double>>;

ScalarKind kindOf(const AnyPackedTensor& tensor);

/// Tensor file schema:
///   { "extents": [...], "symmetry": [["i","j"],["k"]],
///     "index_vars": [...], "storage_perm": [...], "values": [...] }
/// The loader re-derives the layout from extents + symmetry and re-validates
/// every invariant, including the declared storage permutation and the value
/// count.
AnyPackedTensor load_tensor_json(const std::string& path,
                                 const std::string& expect_name = "");
void save_tensor_json(const std::string& path, const AnyPackedTensor& tensor);

template <typename T>
void save_tensor_json(const std::string& path, const PackedTensor<T>& tensor) {
  save_tensor_json(path, AnyPackedTensor{tensor});
}

/// Problem file schema:
///   { "expr": "...", "symmetries": "...", "extents": {"i": 4, ...} }
struct Problem {
  std::string expr;
  std::string symmetries;
  std::map<std::string, Coord> extents;
};

Problem load_problem_json(const std::string& path);

}  // namespace symtc
