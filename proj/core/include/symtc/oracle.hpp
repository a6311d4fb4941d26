#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "symtc/expr.hpp"
#include "symtc/storage.hpp"

namespace symtc {

/// SplitMix64: the fixed, documented generator behind all random fixtures,
/// so reports are reproducible per (fixture, seed).
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

/// Evaluates the statement by nested loops over all index values of each
/// term, with no symmetry logic whatsoever. The trusted baseline.
template <typename T>
DenseTensor<T> dense_reference(const TensorStatement& stmt,
                               const std::map<std::string, DenseTensor<T>>& inputs,
                               const std::map<std::string, Coord>& extents);

/// Deterministic random packed tensor: canonical slots filled with integers
/// in [-9, 9] (or doubles in [-1, 1]). Unpacking yields a tensor satisfying
/// the signature's symmetry by construction.
template <typename T>
PackedTensor<T> random_symmetric(const TensorSignature& sig,
                                 std::uint64_t seed);

enum class ScalarKind { Int64, Float64 };

/// One end-to-end comparison of the compiled pipeline against the dense
/// brute-force reference.
struct VerifyTrial {
  std::uint64_t seed = 0;
  bool pass = false;
  double max_abs_diff = 0.0;
  /// Number of (term, output slot) pairs whose accumulation count differed
  /// from the term's reduction-domain size.
  std::int64_t write_count_anomalies = 0;
  /// Set when the dense reference result violated the derived output
  /// symmetry (would disprove the output-symmetry derivation).
  bool output_symmetry_violated = false;
  std::string detail;
};

struct VerifyReport {
  std::string statement;
  std::string symmetries;
  std::string derived_output_symmetry;
  std::vector<VerifyTrial> trials;

  bool pass() const;
  std::string text() const;
  std::string json() const;
};

/// Runs generate -> execute on seeded random inputs, evaluates the dense
/// reference on the unpacked inputs, re-packs the dense result under the
/// derived output symmetry (validating that it actually has that symmetry),
/// and compares exactly (integers) or within 1e-12 relative (doubles).
/// Also checks instrumented write counts against reduction-domain sizes.
VerifyReport verify(const TensorStatement& stmt,
                    const std::vector<TensorSignature>& sigs,
                    const std::map<std::string, Coord>& extents,
                    std::uint64_t seed, int trials = 1,
                    ScalarKind kind = ScalarKind::Int64);

}  // namespace symtc
