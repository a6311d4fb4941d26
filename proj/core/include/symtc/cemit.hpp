#pragma once

#include <string>

#include "symtc/loopgen.hpp"

namespace symtc {

/// Emits the loop nest as one self-contained C99 function
///
///   void <name>(double* OUT, const double* IN..., const int* extents)
///
/// operating on packed flat arrays. Loops mirror the IR bounds verbatim;
/// packed offsets are computed by the inlined incremental position
/// recurrence, with partial values hoisted to the loop level where their
/// variables are bound. The output is zero-initialized at function start.
/// The header comment documents the storage permutation of every tensor and
/// the meaning of the extents array. Emission is deterministic.
std::string emit_c(const LoopNest& nest, const std::string& name);

}  // namespace symtc
