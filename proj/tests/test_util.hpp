#pragma once

#include <doctest.h>

#include <string>

// Runs `fn`, requires it to throw E, and checks the message contains
// `needle`. The vendored doctest predates doctest::Contains.
template <typename E, typename F>
void checkThrowsContaining(F&& fn, const std::string& needle) {
  try {
    fn();
    FAIL_CHECK("expected exception containing \"" << needle << "\"");
  } catch (const E& e) {
    std::string what = e.what();
    CAPTURE(what);
    CHECK(what.find(needle) != std::string::npos);
  } catch (...) {
    FAIL_CHECK("wrong exception type (wanted message \"" << needle << "\")");
  }
}
