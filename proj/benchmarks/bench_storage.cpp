#include <benchmark/benchmark.h>

#include "symtc/oracle.hpp"
#include "symtc/storage.hpp"

using namespace symtc;

namespace {

TensorSignature symmetricMatrix(Coord n) {
  TensorSignature sig;
  sig.name = "A";
  sig.index_vars = {"i", "j"};
  sig.extents = {n, n};
  sig.symmetry = SymmetryPartition({{"i", "j"}}, {"i", "j"});
  return sig;
}

TensorSignature order4(Coord n) {
  TensorSignature sig;
  sig.name = "T";
  sig.index_vars = {"i", "j", "k", "l"};
  sig.extents = {n, n, n, n};
  sig.symmetry = SymmetryPartition({{"i", "j"}, {"k", "l"}},
                                   {"i", "j", "k", "l"});
  return sig;
}

void BM_PositionClosedForm(benchmark::State& state) {
  PackedLayout layout{order4(state.range(0))};
  Coord n = state.range(0);
  Coords c{n - 1, n / 2, n - 1, n / 3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(layout.position(c));
  }
}
BENCHMARK(BM_PositionClosedForm)->Arg(8)->Arg(32);

void BM_PositionIncremental(benchmark::State& state) {
  PackedLayout layout{order4(state.range(0))};
  Coord n = state.range(0);
  Coords c{n - 1, n / 2, n - 1, n / 3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(layout.position_incremental(c));
  }
}
BENCHMARK(BM_PositionIncremental)->Arg(8)->Arg(32);

void BM_PackSymmetricMatrix(benchmark::State& state) {
  auto sig = symmetricMatrix(state.range(0));
  auto dense = unpack(random_symmetric<double>(sig, 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pack(dense, sig));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PackSymmetricMatrix)->RangeMultiplier(4)->Range(16, 256);

void BM_CanonicalEnumeration(benchmark::State& state) {
  PackedLayout layout{order4(state.range(0))};
  for (auto _ : state) {
    std::int64_t count = 0;
    for (CanonicalCoords it(layout); it.valid(); it.advance()) ++count;
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_CanonicalEnumeration)->Arg(8)->Arg(16);

}  // namespace
