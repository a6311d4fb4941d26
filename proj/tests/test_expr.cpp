#include <doctest.h>

#include <random>

#include "symtc/error.hpp"
#include "symtc/expr.hpp"

using namespace symtc;

TEST_CASE("parse matmul") {
  auto stmt = parse_statement("C[i,k] = A[i,j] * B[j,k]");
  CHECK(stmt.output.tensor == "C");
  CHECK(stmt.output.vars == std::vector<std::string>{"i", "k"});
  REQUIRE(stmt.terms.size() == 1);
  REQUIRE(stmt.terms[0].factors.size() == 2);
  CHECK(stmt.terms[0].factors[0].tensor == "A");
  CHECK(stmt.terms[0].factors[1].tensor == "B");
  CHECK(stmt.var_order == std::vector<std::string>{"i", "k", "j"});
  CHECK(stmt.reductionVars() == std::vector<std::string>{"j"});
}

TEST_CASE("parse matrix addition as two single-factor terms") {
  auto stmt = parse_statement("C[i,j] = A[i,j] + B[i,j]");
  REQUIRE(stmt.terms.size() == 2);
  CHECK(stmt.terms[0].factors.size() == 1);
  CHECK(stmt.terms[1].factors.size() == 1);
  CHECK(stmt.reductionVars().empty());
}

TEST_CASE("repeated index variable in one access is rejected") {
  CHECK_THROWS_AS(parse_statement("y[i] = A[i,i]"), ParseError);
}

TEST_CASE("output variable missing from a term is rejected") {
  CHECK_THROWS_AS(parse_statement("C[i,j] = A[i,j] + B[i,k]"), ParseError);
}

TEST_CASE("a tensor may be accessed only once") {
  CHECK_THROWS_AS(parse_statement("C[i,l] = X[i,j] * A[j,k] * X[l,k]"),
                  ParseError);
  CHECK_THROWS_AS(parse_statement("C[i,j] = C[i,j] + B[i,j]"), ParseError);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_statement("C[i,j] =\n A[i,j] +");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 1);
  }
  CHECK_THROWS_AS(parse_statement("C[i,j]"), ParseError);
  CHECK_THROWS_AS(parse_statement("C[] = A[]"), ParseError);
  CHECK_THROWS_AS(parse_statement("C[I] = A[I]"), ParseError);
  CHECK_THROWS_AS(parse_statement("C[i] = A[i] junk"), ParseError);
}

TEST_CASE("print-parse round trip on fixtures") {
  for (const char* text : {
           "C[i,k] = A[i,j] * B[j,k]",
           "C[i,j] = A[i,j] + B[i,j]",
           "y[i] = A[i,j] * x[j]",
           "C[i,l] = A[i,j,k] * B[k,j,l]",
           "C[i,j,k,l] = A[i,j,k,l] + B[i,j,k,l]",
       }) {
    auto stmt = parse_statement(text);
    CHECK(stmt.str() == text);
    CHECK(parse_statement(stmt.str()) == stmt);
  }
}

TEST_CASE("print-parse round trip on random statements") {
  std::mt19937 rng(7);
  const std::vector<std::string> vars{"i", "j", "k", "l", "m"};
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> nOut(1, 3);
    std::uniform_int_distribution<int> nTerms(1, 3);
    std::vector<std::string> outVars(vars.begin(), vars.begin() + nOut(rng));
    TensorStatement stmt;
    stmt.output = Access{"R", outVars, {}};
    int tensorId = 0;
    int terms = nTerms(rng);
    for (int t = 0; t < terms; ++t) {
      Term term;
      std::uniform_int_distribution<int> nFactors(1, 2);
      int factors = nFactors(rng);
      std::vector<std::string> remaining = outVars;
      for (int f = 0; f < factors; ++f) {
        std::vector<std::string> use;
        if (f + 1 == factors) {
          use = remaining;  // guarantee output coverage
        } else {
          use.push_back(remaining.front());
          remaining.erase(remaining.begin());
          if (remaining.empty()) remaining = outVars;
        }
        std::uniform_int_distribution<int> extra(0, 1);
        if (extra(rng) && use.size() < vars.size()) {
          for (const auto& v : vars) {
            if (std::find(use.begin(), use.end(), v) == use.end()) {
              use.push_back(v);
              break;
            }
          }
        }
        term.factors.push_back(Access{"T" + std::to_string(tensorId++), use, {}});
      }
      stmt.terms.push_back(term);
    }
    auto printed = stmt.str();
    CAPTURE(printed);
    auto reparsed = parse_statement(printed);
    CHECK(reparsed == stmt);
    CHECK(reparsed.str() == printed);
  }
}

TEST_CASE("parse_symmetries fixture from the contraction example") {
  auto stmt = parse_statement("C[i,l] = A[i,j,k] * B[j,k,l]");
  auto sigs = parse_symmetries("A: {i,j}{k}; B: {j,k}", stmt);
  REQUIRE(sigs.size() == 2);
  CHECK(sigs[0].name == "A");
  CHECK(sigs[0].symmetry.str() == "{i,j}{k}");
  CHECK(sigs[1].name == "B");
  CHECK(sigs[1].symmetry.str() == "{j,k}{l}");  // l inferred singleton
}

TEST_CASE("empty symmetry text means non-symmetric") {
  auto stmt = parse_statement("C[i,j] = A[i,j] + B[i,j]");
  auto sigs = parse_symmetries("", stmt);
  CHECK(sigs[0].symmetry.trivial());
  CHECK(sigs[1].symmetry.trivial());

  auto explicitSigs = parse_symmetries("A: {i}{j}", stmt);
  CHECK(explicitSigs[0].symmetry == sigs[0].symmetry);
}

TEST_CASE("parse_symmetries rejects bad declarations") {
  auto stmt = parse_statement("C[i,j] = A[i,j] + B[i,j]");
  CHECK_THROWS_AS(parse_symmetries("Q: {i,j}", stmt), ParseError);
  CHECK_THROWS_AS(parse_symmetries("A: {i,k}", stmt), ParseError);
  CHECK_THROWS_AS(parse_symmetries("A: {i}{i,j}", stmt), ParseError);
  CHECK_THROWS_AS(parse_symmetries("C: {i,j}", stmt), ParseError);
  CHECK_THROWS_AS(parse_symmetries("A: {i,j}; A: {i}{j}", stmt), ParseError);
}

TEST_CASE("parse_extents") {
  auto extents = parse_extents("i=4,j=5");
  CHECK(extents.at("i") == 4);
  CHECK(extents.at("j") == 5);
  CHECK(parse_extents("").empty());
  CHECK_THROWS_AS(parse_extents("i=x"), ParseError);
  CHECK_THROWS_AS(parse_extents("i=1,i=2"), ParseError);
}

TEST_CASE("attach_extents validates part consistency") {
  auto stmt = parse_statement("C[i,j] = A[i,j] + B[i,j]");
  auto sigs = parse_symmetries("A: {i,j}", stmt);
  CHECK_THROWS_AS(attach_extents(sigs, {{"i", 3}, {"j", 4}}), ValidationError);
  auto ok = attach_extents(sigs, {{"i", 3}, {"j", 3}});
  CHECK(ok[0].extents == std::vector<Coord>{3, 3});
  CHECK_THROWS_AS(attach_extents(sigs, {{"i", 3}}), ValidationError);
}
