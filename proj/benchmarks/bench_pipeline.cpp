#include <benchmark/benchmark.h>

#include "symtc/exec.hpp"
#include "symtc/expr.hpp"
#include "symtc/loopgen.hpp"
#include "symtc/oracle.hpp"

using namespace symtc;

namespace {

void BM_Generate(benchmark::State& state) {
  auto stmt = parse_statement("C[i,l] = A[i,j,k] * B[k,j,l]");
  auto sigs = parse_symmetries("A: {i,j}{k}; B: {j,k}{l}", stmt);
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate(stmt, sigs));
  }
}
BENCHMARK(BM_Generate);

void BM_ExecuteMisalignedProduct(benchmark::State& state) {
  Coord n = state.range(0);
  auto stmt = parse_statement("C[i,l] = A[i,j,k] * B[k,j,l]");
  auto sigs = attach_extents(
      parse_symmetries("A: {i,j}{k}; B: {j,k}{l}", stmt),
      {{"i", n}, {"j", n}, {"k", n}, {"l", n}});
  auto nest = generate(stmt, sigs);
  std::map<std::string, Coord> extents{{"i", n}, {"j", n}, {"k", n}, {"l", n}};
  std::map<std::string, PackedTensor<double>> inputs;
  SplitMix64 seeder(3);
  for (const auto& sig : nest.inputs) {
    inputs.emplace(sig.name, random_symmetric<double>(sig, seeder.next()));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(execute(nest, inputs, extents));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_ExecuteMisalignedProduct)->RangeMultiplier(2)->Range(4, 16)
    ->Complexity();

void BM_DenseReference(benchmark::State& state) {
  Coord n = state.range(0);
  auto stmt = parse_statement("C[i,l] = A[i,j,k] * B[k,j,l]");
  auto sigs = attach_extents(
      parse_symmetries("A: {i,j}{k}; B: {j,k}{l}", stmt),
      {{"i", n}, {"j", n}, {"k", n}, {"l", n}});
  std::map<std::string, Coord> extents{{"i", n}, {"j", n}, {"k", n}, {"l", n}};
  std::map<std::string, DenseTensor<double>> inputs;
  SplitMix64 seeder(3);
  TensorSignature a = sigs[0], b = sigs[1];
  inputs.emplace("A", unpack(random_symmetric<double>(a, seeder.next())));
  inputs.emplace("B", unpack(random_symmetric<double>(b, seeder.next())));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dense_reference(stmt, inputs, extents));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_DenseReference)->RangeMultiplier(2)->Range(4, 16)->Complexity();

}  // namespace

BENCHMARK_MAIN();
