#pragma once

#include <cstdint>

namespace symtc {

// Simplicial numbers: s_0(n) = 1, s_d(n) = sum_{i=1..n} s_{d-1}(i).
// s_1 are the naturals, s_2 the triangular numbers, s_3 the tetrahedral
// numbers. They count canonical coordinate tuples of symmetric tensors and
// are the building block of every packed-position formula.
//
// Both evaluators are exact over int64 and throw OverflowError instead of
// wrapping. By convention s_d(0) = 0 for d >= 1 (empty sum) and s_0(n) = 1,
// so position formulas need no special case at coordinate zero.

/// Closed-form evaluation: s_d(n) = (1/d!) * prod_{i=1..d} (n + d - i),
/// computed as an incremental product with interleaved exact divisions.
std::int64_t simplicial(int d, std::int64_t n);

/// Literal-recurrence evaluation (row-by-row summation). Independent of the
/// closed form; kept as a test oracle.
std::int64_t simplicial_recurrence(int d, std::int64_t n);

/// Checked int64 helpers used wherever packed sizes and positions are
/// accumulated.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace symtc
