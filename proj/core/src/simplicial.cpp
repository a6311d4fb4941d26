#include "symtc/simplicial.hpp"

#include <vector>

#include "symtc/error.hpp"

namespace symtc {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("int64 overflow in addition");
  }
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("int64 overflow in multiplication");
  }
  return r;
}

std::int64_t simplicial(int d, std::int64_t n) {
  if (d < 0 || n < 0) {
    throw ContractViolation("simplicial(d, n) requires d >= 0 and n >= 0");
  }
  // After step i the running value is C(n+d-1, i), so dividing by i is
  // always exact.
  std::int64_t result = 1;
  for (int i = 1; i <= d; ++i) {
    result = checked_mul(result, n + d - i);
    if (result % i != 0) {
      throw ContractViolation("simplicial closed form: inexact division");
    }
    result /= i;
  }
  return result;
}

std::int64_t simplicial_recurrence(int d, std::int64_t n) {
  if (d < 0 || n < 0) {
    throw ContractViolation(
        "simplicial_recurrence(d, n) requires d >= 0 and n >= 0");
  }
  if (d == 0) return 1;
  // Row for d = 0 is all ones; each higher row is the running prefix sum of
  // the one below it, evaluated at 1..n.
  std::vector<std::int64_t> row(static_cast<std::size_t>(n), 1);
  for (int level = 1; level <= d; ++level) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      acc = checked_add(acc, row[i]);
      row[i] = acc;
    }
  }
  return n == 0 ? 0 : row[static_cast<std::size_t>(n) - 1];
}

}  // namespace symtc
