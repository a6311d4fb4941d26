#include <doctest.h>

#include <functional>
#include <numeric>
#include <set>

#include "test_util.hpp"

#include "symtc/error.hpp"
#include "symtc/oracle.hpp"
#include "symtc/storage.hpp"

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

// Dense 3x3 matrix from the running storage example.
DenseTensor<std::int64_t> exampleMatrix() {
  return DenseTensor<std::int64_t>{{3, 3}, {1, 2, 4, 2, 3, 5, 4, 5, 6}};
}

}  // namespace

TEST_CASE("packing the example matrix yields [1,2,3,4,5,6]") {
  auto sig = makeSig("M", {"i", "j"}, {{"i", "j"}}, {3, 3});
  auto packed = pack(exampleMatrix(), sig);
  CHECK(packed.values == std::vector<std::int64_t>{1, 2, 3, 4, 5, 6});
  CHECK(packed.layout.totalSize() == 6);
  CHECK(unpack(packed) == exampleMatrix());
}

TEST_CASE("position fixtures") {
  auto m = PackedLayout{makeSig("M", {"i", "j"}, {{"i", "j"}}, {3, 3})};
  CHECK(m.position(Coords{2, 1}) == 4);  // s_2(2) + s_1(1) = 3 + 1
  CHECK(m.position(Coords{0, 0}) == 0);
  CHECK(m.position_incremental(Coords{2, 1}) == 4);

  auto t =
      PackedLayout{makeSig("T", {"i", "j", "k"}, {{"i", "j", "k"}}, {3, 3, 3})};
  // s_3(i) + s_2(j) + s_1(k)
  CHECK(t.position(Coords{2, 1, 0}) == 4 + 1 + 0);
  CHECK(t.position(Coords{0, 0, 0}) == 0);

  // Five-dimensional {i,j}{k,l}{m} layout matches the per-part formula.
  auto five = PackedLayout{makeSig("F", {"i", "j", "k", "l", "m"},
                                   {{"i", "j"}, {"k", "l"}, {"m"}},
                                   {4, 4, 3, 3, 5})};
  Coords c{3, 1, 2, 2, 4};
  std::int64_t expected =
      (simplicial(2, 3) + simplicial(1, 1)) * simplicial(2, 3) *
          simplicial(1, 5) +
      (simplicial(2, 2) + simplicial(1, 2)) * simplicial(1, 5) +
      simplicial(1, 4);
  CHECK(five.position(c) == expected);
  CHECK(five.position_incremental(c) == expected);
}

TEST_CASE("non-symmetric layouts reduce to row-major") {
  auto layout =
      PackedLayout{makeSig("D", {"i", "j", "k"}, {{"i"}, {"j"}, {"k"}},
                           {2, 3, 4})};
  CHECK(layout.totalSize() == 24);
  Coords c{1, 2, 3};
  CHECK(layout.position_incremental(c) == (1 * 3 + 2) * 4 + 3);
  CHECK(layout.position(c) == (1 * 3 + 2) * 4 + 3);
}

TEST_CASE("non-canonical packed access is a loud contract violation") {
  auto layout = PackedLayout{makeSig("M", {"i", "j"}, {{"i", "j"}}, {3, 3})};
  checkThrowsContaining<ContractViolation>(
      [&] { layout.position(Coords{1, 2}); }, "non-canonical");
  checkThrowsContaining<ContractViolation>(
      [&] { layout.position_incremental(Coords{1, 2}); }, "{i,j}");
  CHECK_THROWS_AS(layout.position(Coords{3, 0}), ContractViolation);
  CHECK_THROWS_AS(layout.position(Coords{0}), ContractViolation);
}

TEST_CASE("storage permutation makes parts contiguous") {
  auto layout = PackedLayout{
      makeSig("T", {"i", "j", "k"}, {{"i", "k"}, {"j"}}, {3, 4, 3})};
  CHECK(layout.storagePerm() == std::vector<int>{0, 2, 1});
  CHECK(layout.totalSize() == simplicial(2, 3) * 4);
  // Within-part dimension order is preserved: i before k.
  CHECK(layout.dimParts() == std::vector<std::vector<int>>{{0, 2}, {1}});
}

TEST_CASE("canonical coordinate enumeration in position order") {
  auto m = PackedLayout{makeSig("M", {"i", "j"}, {{"i", "j"}}, {3, 3})};
  std::vector<Coords> seen;
  for (CanonicalCoords it(m); it.valid(); it.advance()) {
    seen.push_back(it.coords());
  }
  CHECK(seen == std::vector<Coords>{{0, 0},
                                    {1, 0},
                                    {1, 1},
                                    {2, 0},
                                    {2, 1},
                                    {2, 2}});

  TensorSignature scalar;
  scalar.name = "s";
  auto scalarLayout = PackedLayout{scalar};
  CanonicalCoords it(scalarLayout);
  CHECK(it.valid());
  CHECK(it.coords().empty());
  it.advance();
  CHECK_FALSE(it.valid());

  auto d = PackedLayout{makeSig("D", {"i", "j"}, {{"i"}, {"j"}}, {2, 2})};
  std::vector<Coords> rowMajor;
  for (CanonicalCoords dit(d); dit.valid(); dit.advance()) {
    rowMajor.push_back(dit.coords());
  }
  CHECK(rowMajor == std::vector<Coords>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("position is a bijection for every partition shape up to 5 dims") {
  // Partition shapes via restricted growth strings.
  for (int dims = 1; dims <= 4; ++dims) {
    std::vector<int> assign(static_cast<std::size_t>(dims), 0);
    std::function<void(int, int)> shapes = [&](int at, int maxPart) {
      if (at == dims) {
        int parts = maxPart + 1;
        std::vector<std::vector<std::string>> partVars(
            static_cast<std::size_t>(parts));
        std::vector<std::string> vars;
        for (int d = 0; d < dims; ++d) {
          std::string v(1, static_cast<char>('a' + d));
          vars.push_back(v);
          partVars[static_cast<std::size_t>(assign[static_cast<std::size_t>(d)])]
              .push_back(v);
        }
        for (Coord n : {1, 2, 4}) {
          auto sig = makeSig("T", vars, partVars,
                             std::vector<Coord>(static_cast<std::size_t>(dims), n));
          PackedLayout layout{sig};
          std::set<std::int64_t> positions;
          std::int64_t index = 0;
          for (CanonicalCoords it(layout); it.valid(); it.advance()) {
            std::int64_t pos = layout.position(it.coords());
            CHECK(pos == index);
            CHECK(layout.position_incremental(it.coords()) == pos);
            positions.insert(pos);
            ++index;
          }
          CHECK(static_cast<std::int64_t>(positions.size()) ==
                layout.totalSize());
        }
        return;
      }
      for (int p = 0; p <= maxPart + 1; ++p) {
        assign[static_cast<std::size_t>(at)] = p;
        shapes(at + 1, std::max(maxPart, p));
      }
    };
    shapes(0, -1);
  }
}

TEST_CASE("pack rejects dense values that violate the declared symmetry") {
  auto sig = makeSig("M", {"i", "j"}, {{"i", "j"}}, {2, 2});
  DenseTensor<std::int64_t> bad{{2, 2}, {1, 5, 2, 3}};
  checkThrowsContaining<ValidationError>(
      [&] { pack(bad, sig); },
      "value at (0,1) is 5 but value at canonical (1,0)");
}

TEST_CASE("identity packing for non-symmetric tensors") {
  auto sig = makeSig("D", {"i", "j"}, {{"i"}, {"j"}}, {2, 3});
  DenseTensor<std::int64_t> dense{{2, 3}, {1, 2, 3, 4, 5, 6}};
  auto packed = pack(dense, sig);
  CHECK(packed.values == dense.values);
  CHECK(unpack(packed) == dense);
}

TEST_CASE("pack/unpack round trip on random symmetric tensors") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto sig = makeSig("T", {"i", "j", "k", "l"}, {{"i", "j"}, {"k", "l"}},
                       {4, 4, 3, 3});
    auto packed = random_symmetric<std::int64_t>(sig, seed);
    auto dense = unpack(packed);
    CHECK(pack(dense, sig) == packed);
  }
  auto one = makeSig("T", {"i"}, {{"i"}}, {1});
  DenseTensor<double> single{{1}, {2.5}};
  CHECK(unpack(pack(single, one)) == single);
}

TEST_CASE("packed size formulas") {
  auto sym3 = PackedLayout{
      makeSig("T", {"i", "j", "k"}, {{"i", "j", "k"}}, {5, 5, 5})};
  CHECK(sym3.totalSize() == simplicial(3, 5));  // tetrahedral number
  CHECK(sym3.totalSize() == 35);
  auto empty =
      PackedLayout{makeSig("Z", {"i", "j"}, {{"i", "j"}}, {0, 0})};
  CHECK(empty.totalSize() == 0);
}
