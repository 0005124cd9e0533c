#include <doctest.h>

#include "numeros/census.hpp"
#include "numeros/coding.hpp"
#include "numeros/errors.hpp"

using namespace numeros;

TEST_CASE("small codes") {
  CHECK(ackermannCode(HFSet()) == 0);
  CHECK(HFSet::parse("{}").code() == 0);
  CHECK(HFSet::parse("{{}}").code() == 1);
  CHECK(HFSet::parse("{{{}}}").code() == 2);
  CHECK(HFSet::parse("{{},{{}}}").code() == 3);
  CHECK(HFSet::parse("{{},{{}}}").rank() == 2);
}

TEST_CASE("decode / code roundtrip on an initial segment") {
  for (std::uint64_t n = 0; n < 4096; ++n) {
    HFSet x = HFSet::decode(n);
    CHECK(x.code() == n);
    CHECK(HFSet::parse(x.str()).code() == n);
  }
}

TEST_CASE("members are canonical: sorted by code, duplicate-free") {
  HFSet x = HFSet::parse("{{{}},{},{{}},{}}");  // {1,0,1,0} -> {0,1}
  CHECK(x.code() == 3);
  CHECK(x.members().size() == 2);
  CHECK(x.members()[0].code() == 0);
  CHECK(x.members()[1].code() == 1);
}

TEST_CASE("oversized member codes are rejected") {
  HFSet big = HFSet::decode(300000);
  CHECK_THROWS_AS(HFSet(std::vector<HFSet>{big}), EngineError);
}

TEST_CASE("codeSet is the set of member codes") {
  std::vector<HFSet> X = {HFSet::decode(0), HFSet::decode(3), HFSet::decode(5)};
  SetExpr a = codeSet(X);
  CHECK(contains(a, {0}));
  CHECK(contains(a, {3}));
  CHECK(contains(a, {5}));
  CHECK_FALSE(contains(a, {1}));
  CHECK(censusAt(a, Index({0, 3, 5, 9})) == 3);
  CHECK(censusAt(codeSet({}), Index::ofRange(10)) == 0);
}

TEST_CASE("disjoint unions map to unions of code sets") {
  std::vector<HFSet> X = {HFSet::decode(1), HFSet::decode(2)};
  std::vector<HFSet> Y = {HFSet::decode(4), HFSet::decode(5)};
  std::vector<HFSet> XY = {HFSet::decode(1), HFSet::decode(2),
                           HFSet::decode(4), HFSet::decode(5)};
  Index i = Index::ofRange(8);
  CHECK(censusAt(makeUnion(codeSet(X), codeSet(Y)), i) ==
        censusAt(codeSet(XY), i));
}

TEST_CASE("doubleton product counts pairs with degeneracy") {
  std::vector<HFSet> X = {HFSet::decode(0), HFSet::decode(1)};
  std::vector<HFSet> Y = {HFSet::decode(1), HFSet::decode(2)};
  DoubletonProduct dp = doubletonProduct(X, Y);
  CHECK(dp.pairsConsidered == 4);
  CHECK(dp.degeneratePairs == 1);  // {1,1} = {1}
  // the four doubletons {0,1},{0,2},{1,1}={1},{1,2} are pairwise distinct
  CHECK(dp.distinctCodes == 4);

  Index i = pairClosedIndex(X, Y);
  CHECK(censusAt(dp.expr, i) == 4);
}

TEST_CASE("doubleton multiplicativity holds on pair-closed indices") {
  // disjoint X, Y with all doubletons distinct: |A_X * A_Y| = |A_X| * |A_Y|
  std::vector<HFSet> X = {HFSet::decode(0), HFSet::decode(3)};
  std::vector<HFSet> Y = {HFSet::decode(5), HFSet::decode(6), HFSet::decode(9)};
  DoubletonProduct dp = doubletonProduct(X, Y);
  CHECK(dp.degeneratePairs == 0);
  Index i = pairClosedIndex(X, Y);
  CHECK(censusAt(dp.expr, i) ==
        censusAt(codeSet(X), i) * censusAt(codeSet(Y), i));
}

TEST_CASE("multiplicativity can fail off pair-closed indices") {
  std::vector<HFSet> X = {HFSet::decode(0), HFSet::decode(1)};
  std::vector<HFSet> Y = {HFSet::decode(0), HFSet::decode(1)};
  DoubletonProduct dp = doubletonProduct(X, Y);
  // {0,1} has code 3; on an index missing it the product undercounts
  Index small(Index::ofRange(3));
  CHECK(censusAt(dp.expr, small) <
        censusAt(codeSet(X), small) * censusAt(codeSet(Y), small));
}

TEST_CASE("pair-closed index contains members and doubleton codes") {
  std::vector<HFSet> X = {HFSet::decode(0)};
  std::vector<HFSet> Y = {HFSet::decode(1)};
  Index i = pairClosedIndex(X, Y);
  CHECK(i.contains(0));
  CHECK(i.contains(1));
  CHECK(i.contains(3));  // gamma({0-set, 1-set}) = 2^0 + 2^1
}

TEST_CASE("parse rejects malformed literals") {
  CHECK_THROWS_AS(HFSet::parse("{"), EngineError);
  CHECK_THROWS_AS(HFSet::parse("{}}"), EngineError);
  CHECK_THROWS_AS(HFSet::parse("x"), EngineError);
}
