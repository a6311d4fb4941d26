#include <doctest.h>

#include <cstdint>
#include <limits>

#include "symtc/error.hpp"
#include "symtc/simplicial.hpp"

using namespace symtc;

TEST_CASE("base cases and paper spot checks") {
  CHECK(simplicial(0, 7) == 1);   // s_0(n) = 1
  CHECK(simplicial(1, 5) == 5);   // s_1(x) = x
  CHECK(simplicial(2, 3) == 6);   // s_1(1)+s_1(2)+s_1(3)
  CHECK(simplicial(3, 2) == 4);   // s_2(1)+s_2(2) = 1+3

  CHECK(simplicial_recurrence(2, 3) == 6);
  CHECK(simplicial_recurrence(0, 0) == 1);
  CHECK(simplicial_recurrence(4, 1) == 1);  // s_d(1) = 1 for all d
}

TEST_CASE("s_d(0) is the empty sum for d >= 1") {
  CHECK(simplicial(0, 0) == 1);
  for (int d = 1; d <= 8; ++d) {
    CHECK(simplicial(d, 0) == 0);
    CHECK(simplicial_recurrence(d, 0) == 0);
  }
}

TEST_CASE("closed form equals the recurrence on the full desk-scale grid") {
  for (int d = 0; d <= 8; ++d) {
    for (std::int64_t n = 0; n <= 60; ++n) {
      CAPTURE(d);
      CAPTURE(n);
      CHECK(simplicial(d, n) == simplicial_recurrence(d, n));
    }
  }
}

TEST_CASE("Pascal-style difference s_d(n) - s_d(n-1) = s_{d-1}(n)") {
  for (int d = 1; d <= 6; ++d) {
    for (std::int64_t n = 1; n <= 40; ++n) {
      CHECK(simplicial(d, n) - simplicial(d, n - 1) == simplicial(d - 1, n));
    }
  }
}

TEST_CASE("well-known families") {
  // naturals, triangular, tetrahedral
  CHECK(simplicial(1, 9) == 9);
  CHECK(simplicial(2, 4) == 10);
  CHECK(simplicial(3, 4) == 20);
  CHECK(simplicial(2, 100) == 5050);
}

TEST_CASE("overflow is detected, not wrapped") {
  CHECK_THROWS_AS(simplicial(8, 1'000'000'000), OverflowError);
  CHECK_THROWS_AS(simplicial_recurrence(3, 5'000'000), OverflowError);
  CHECK_THROWS_AS(
      checked_add(std::numeric_limits<std::int64_t>::max(), 1), OverflowError);
  CHECK_THROWS_AS(checked_mul(std::int64_t{1} << 40, std::int64_t{1} << 40),
                  OverflowError);
}

TEST_CASE("negative arguments are contract violations") {
  CHECK_THROWS_AS(simplicial(-1, 3), ContractViolation);
  CHECK_THROWS_AS(simplicial(2, -1), ContractViolation);
}
