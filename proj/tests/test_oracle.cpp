#include <doctest.h>

#include "symtc/expr.hpp"
#include "symtc/oracle.hpp"

using namespace symtc;

namespace {

TensorSignature makeSig(const std::string& name,
                        std::vector<std::string> vars,
                        std::vector<std::vector<std::string>> parts,
                        std::vector<Coord> extents) {
  TensorSignature sig;
  sig.name = name;
  sig.index_vars = vars;
  sig.extents = std::move(extents);
  sig.symmetry = SymmetryPartition(std::move(parts), std::move(vars));
  sig.validate();
  return sig;
}

}  // namespace

TEST_CASE("dense reference: matmul of 2x2 identities is the identity") {
  auto stmt = parse_statement("C[i,k] = A[i,j] * B[j,k]");
  std::map<std::string, DenseTensor<std::int64_t>> inputs{
      {"A", {{2, 2}, {1, 0, 0, 1}}}, {"B", {{2, 2}, {1, 0, 0, 1}}}};
  std::map<std::string, Coord> extents{{"i", 2}, {"j", 2}, {"k", 2}};
  auto out = dense_reference(stmt, inputs, extents);
  CHECK(out.values == std::vector<std::int64_t>{1, 0, 0, 1});
}

TEST_CASE("dense reference: adding the example matrix to itself doubles it") {
  auto stmt = parse_statement("C[i,j] = A[i,j] + B[i,j]");
  DenseTensor<std::int64_t> m{{3, 3}, {1, 2, 4, 2, 3, 5, 4, 5, 6}};
  std::map<std::string, DenseTensor<std::int64_t>> inputs{{"A", m}, {"B", m}};
  std::map<std::string, Coord> extents{{"i", 3}, {"j", 3}};
  auto out = dense_reference(stmt, inputs, extents);
  CHECK(out.values ==
        std::vector<std::int64_t>{2, 4, 8, 4, 6, 10, 8, 10, 12});
}

TEST_CASE("dense reference: one zero input zeroes a contraction") {
  auto stmt = parse_statement("C[i,l] = A[i,j,k] * B[j,k,l]");
  DenseTensor<std::int64_t> zero{{2, 2, 2}, std::vector<std::int64_t>(8, 0)};
  DenseTensor<std::int64_t> ones{{2, 2, 2}, std::vector<std::int64_t>(8, 1)};
  std::map<std::string, DenseTensor<std::int64_t>> inputs{{"A", zero},
                                                          {"B", ones}};
  std::map<std::string, Coord> extents{{"i", 2}, {"j", 2}, {"k", 2}, {"l", 2}};
  auto out = dense_reference(stmt, inputs, extents);
  for (auto v : out.values) CHECK(v == 0);
}

TEST_CASE("dense reference rejects extent mismatches") {
  auto stmt = parse_statement("C[i,k] = A[i,j] * B[j,k]");
  std::map<std::string, DenseTensor<std::int64_t>> inputs{
      {"A", {{2, 3}, {1, 2, 3, 4, 5, 6}}}, {"B", {{2, 2}, {1, 0, 0, 1}}}};
  std::map<std::string, Coord> extents{{"i", 2}, {"j", 3}, {"k", 2}};
  CHECK_THROWS_AS(dense_reference(stmt, inputs, extents), ValidationError);
}

TEST_CASE("random_symmetric is deterministic and respects the symmetry") {
  auto sig = makeSig("T", {"i", "j", "k"}, {{"i", "j"}, {"k"}}, {4, 4, 3});
  auto a = random_symmetric<std::int64_t>(sig, 42);
  auto b = random_symmetric<std::int64_t>(sig, 42);
  CHECK(a == b);

  auto c = random_symmetric<std::int64_t>(sig, 43);
  CHECK(a.values != c.values);

  for (auto v : a.values) {
    CHECK(v >= -9);
    CHECK(v <= 9);
  }
  // Unpacking and re-packing round-trips, so the dense form satisfies the
  // declared symmetry by construction.
  CHECK(pack(unpack(a), sig) == a);

  auto f = random_symmetric<double>(sig, 42);
  for (auto v : f.values) {
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("verify passes on the matrix addition fixtures") {
  auto stmt = parse_statement("C[i,j] = A[i,j] + B[i,j]");
  auto sigs = parse_symmetries("A: {i,j}; B: {i,j}", stmt);
  auto report = verify(stmt, sigs, {{"i", 4}, {"j", 4}}, 1, 3);
  CHECK(report.pass());
  CHECK(report.trials.size() == 3);
  for (const auto& trial : report.trials) {
    CHECK(trial.max_abs_diff == 0.0);
    CHECK(trial.write_count_anomalies == 0);
    CHECK_FALSE(trial.output_symmetry_violated);
  }
  CHECK(report.derived_output_symmetry == "{i,j}");
}

TEST_CASE("verify confirms matmul output needs no symmetry") {
  auto stmt = parse_statement("C[i,k] = A[i,j] * B[j,k]");
  auto sigs = parse_symmetries("A: {i,j}; B: {j,k}", stmt);
  auto report = verify(stmt, sigs, {{"i", 3}, {"j", 3}, {"k", 3}}, 5, 4);
  CHECK(report.pass());
  CHECK(report.derived_output_symmetry == "{i}{k}");
}

TEST_CASE("verify in float mode stays within tolerance") {
  auto stmt = parse_statement("C[i,l] = A[i,j,k] * B[j,k,l]");
  auto sigs = parse_symmetries("A: {i}{j,k}; B: {j,k}{l}", stmt);
  auto report = verify(stmt, sigs, {{"i", 3}, {"j", 3}, {"k", 3}, {"l", 3}},
                       9, 2, ScalarKind::Float64);
  CHECK(report.pass());
}

TEST_CASE("verify passes trivially when every extent is 1") {
  auto stmt = parse_statement("C[i,j] = A[i,j] + B[i,j]");
  auto sigs = parse_symmetries("A: {i,j}", stmt);
  auto report = verify(stmt, sigs, {{"i", 1}, {"j", 1}}, 2, 2);
  CHECK(report.pass());
}

TEST_CASE("report rendering") {
  auto stmt = parse_statement("y[i] = A[i,j] * x[j]");
  auto sigs = parse_symmetries("A: {i,j}", stmt);
  auto report = verify(stmt, sigs, {{"i", 3}, {"j", 3}}, 7, 2);
  auto text = report.text();
  CHECK(text.find("seed 7: pass") != std::string::npos);
  CHECK(text.find("PASS") != std::string::npos);
  auto json = report.json();
  CHECK(json.find("\"pass\": true") != std::string::npos);
  CHECK(json.find("\"seed\": 8") != std::string::npos);
}
