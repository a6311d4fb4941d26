#include "symtc/io.hpp"

#include <fstream>

#include <json.hpp>

#include "symtc/error.hpp"

namespace symtc {

using nlohmann::json;

ScalarKind kindOf(const AnyPackedTensor& tensor) {
  return std::holds_alternative<PackedTensor<std::int64_t>>(tensor)
             ? ScalarKind::Int64
             : ScalarKind::Float64;
}

namespace {

json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

TensorSignature signatureFromJson(const json& j, const std::string& path,
                                  const std::string& expect_name) {
  for (const char* field : {"extents", "symmetry", "index_vars", "values"}) {
    if (!j.contains(field)) {
      throw ValidationError(path + ": missing field \"" + field + "\"");
    }
  }
  TensorSignature sig;
  sig.name = expect_name.empty() ? std::string("tensor") : expect_name;
  sig.index_vars = j.at("index_vars").get<std::vector<std::string>>();
  sig.extents = j.at("extents").get<std::vector<Coord>>();
  auto parts = j.at("symmetry").get<std::vector<std::vector<std::string>>>();
  sig.symmetry = SymmetryPartition(std::move(parts), sig.index_vars);
  sig.validate();
  return sig;
}

void checkLayoutFields(const json& j, const PackedLayout& layout,
                       const std::string& path) {
  if (j.contains("storage_perm")) {
    auto perm = j.at("storage_perm").get<std::vector<int>>();
    if (perm != layout.storagePerm()) {
      throw ValidationError(path +
                            ": storage_perm does not match the layout derived "
                            "from the symmetry");
    }
  }
  std::size_t count = j.at("values").size();
  if (static_cast<std::int64_t>(count) != layout.totalSize()) {
    throw ValidationError(
        path + ": expected " + std::to_string(layout.totalSize()) +
        " packed values, got " + std::to_string(count));
  }
}

}  // namespace

AnyPackedTensor load_tensor_json(const std::string& path,
                                 const std::string& expect_name) {
  json j = readJsonFile(path);
  TensorSignature sig = signatureFromJson(j, path, expect_name);
  PackedLayout layout{sig};
  checkLayoutFields(j, layout, path);

  const json& values = j.at("values");
  bool allIntegers = true;
  for (const auto& v : values) {
    if (!v.is_number()) {
      throw ValidationError(path + ": values must be numbers");
    }
    if (!v.is_number_integer()) allIntegers = false;
  }
  if (allIntegers) {
    PackedTensor<std::int64_t> t{layout,
                                 values.get<std::vector<std::int64_t>>()};
    return t;
  }
  PackedTensor<double> t{layout, values.get<std::vector<double>>()};
  return t;
}

namespace {

template <typename T>
json tensorToJson(const PackedTensor<T>& tensor) {
  const TensorSignature& sig = tensor.layout.signature();
  json j;
  j["extents"] = sig.extents;
  j["symmetry"] = sig.symmetry.parts();
  j["index_vars"] = sig.index_vars;
  j["storage_perm"] = tensor.layout.storagePerm();
  j["values"] = tensor.values;
  return j;
}

}  // namespace

void save_tensor_json(const std::string& path, const AnyPackedTensor& tensor) {
  json j = std::visit([](const auto& t) { return tensorToJson(t); }, tensor);
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

Problem load_problem_json(const std::string& path) {
  json j = readJsonFile(path);
  if (!j.contains("expr")) {
    throw ValidationError(path + ": missing field \"expr\"");
  }
  Problem problem;
  problem.expr = j.at("expr").get<std::string>();
  if (j.contains("symmetries")) {
    problem.symmetries = j.at("symmetries").get<std::string>();
  }
  if (j.contains("extents")) {
    for (const auto& [var, value] : j.at("extents").items()) {
      problem.extents[var] = value.get<Coord>();
    }
  }
  return problem;
}

}  // namespace symtc
