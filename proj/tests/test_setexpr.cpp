#include <doctest.h>

#include <algorithm>

#include "numeros/errors.hpp"
#include "numeros/setexpr.hpp"

using namespace numeros;

namespace {

SetExpr evens() { return makeProgression(2, 0); }
SetExpr odds() { return makeProgression(2, 1); }
SetExpr naturals() { return makeProgression(1, 0); }

}  // namespace

TEST_CASE("membership across the constructors") {
  SetExpr e = evens(), o = odds();
  CHECK(contains(e, {4}));
  CHECK_FALSE(contains(e, {5}));
  CHECK(contains(makeUnion(e, o), {5}));
  CHECK_FALSE(contains(makeIntersect(e, o), {4}));
  CHECK(contains(makeDifference(naturals(), o), {4}));
  CHECK_FALSE(contains(makeDifference(naturals(), o), {5}));
  CHECK(contains(makeProduct(e, o), {2, 5}));
  CHECK_FALSE(contains(makeProduct(e, o), {5, 2}));
  CHECK_FALSE(contains(makeEmpty(), {0}));

  SetExpr f = makeFinite({{1, 2}, {3, 4}});
  CHECK(contains(f, {1, 2}));
  CHECK_FALSE(contains(f, {2, 1}));
}

TEST_CASE("finite powerset membership") {
  SetExpr p = makeFinPowerset(evens());
  // members are tuples listing a finite subset in increasing order
  CHECK(contains(p, {}));  // the empty subset
  CHECK(contains(p, {2}));
  CHECK(contains(p, {2, 6}));
  CHECK_FALSE(contains(p, {6, 2}));  // not sorted
  CHECK_FALSE(contains(p, {2, 2}));  // not a set
  CHECK_FALSE(contains(p, {3}));     // not a subset
}

TEST_CASE("arity profiles") {
  CHECK(evens().arities().list == std::vector<std::size_t>{1});
  SetExpr prod = makeProduct(evens(), evens());
  CHECK(prod.arities().list == std::vector<std::size_t>{2});
  SetExpr mixed = makeUnion(evens(), prod);
  CHECK(mixed.arities().list == std::vector<std::size_t>{1, 2});
  CHECK(makeFinPowerset(evens()).arities().unbounded);
  SetExpr pfin = makeFinPowerset(makeFinite({{1}, {2}}));
  CHECK_FALSE(pfin.arities().unbounded);
  CHECK(pfin.arities().containsZero());
}

TEST_CASE("rename by component permutation") {
  SetExpr ab = makeFinite({{1, 2}});
  SetExpr swapped = makeRenamed(
      CongruenceSpec::componentPermutation({1, 0}), ab);
  CHECK(contains(swapped, {2, 1}));
  CHECK_FALSE(contains(swapped, {1, 2}));
}

TEST_CASE("rename by regroup is the identity on flat tuples") {
  SetExpr prod = makeProduct(evens(), odds());
  SetExpr re = makeRenamed(CongruenceSpec::regroup({2}), prod);
  CHECK(contains(re, {2, 5}));
  CHECK_FALSE(contains(re, {5, 2}));
}

TEST_CASE("rename by finite relabel") {
  SetExpr e = evens();
  SetExpr t = makeRenamed(CongruenceSpec::finiteRelabel({{0, 1}, {1, 0}}), e);
  CHECK(contains(t, {1}));
  CHECK_FALSE(contains(t, {0}));
  CHECK(contains(t, {2}));
}

TEST_CASE("membersWithin is sorted, duplicate-free, and matches contains") {
  Index i({0, 1, 2, 3, 4, 5});
  SetExpr a = makeUnion(evens(), makeProduct(odds(), odds()));
  std::vector<Point> pts = membersWithin(a, i);
  CHECK(std::is_sorted(pts.begin(), pts.end()));
  CHECK(std::adjacent_find(pts.begin(), pts.end()) == pts.end());
  for (const Point& p : pts) {
    CHECK(contains(a, p));
    for (const Label& x : p) CHECK(i.contains(x));
  }
  // evens within: 0,2,4; odd pairs: {1,3,5}^2
  CHECK(pts.size() == 3 + 9);
}

TEST_CASE("membersWithin enforces its cap") {
  SetExpr p = makeFinPowerset(naturals());
  Index i(Index::ofRange(25));
  CHECK_THROWS_AS(membersWithin(p, i, 1000), EngineError);
}

TEST_CASE("structural equality and hashing") {
  SetExpr a = makeUnion(evens(), odds());
  SetExpr b = makeUnion(evens(), odds());
  SetExpr c = makeUnion(odds(), evens());
  CHECK(a.structurallyEqual(b));
  CHECK(a.hash() == b.hash());
  CHECK_FALSE(a.structurallyEqual(c));
  CHECK(combine(SetOp::Union, evens(), odds()).structurallyEqual(a));
}

TEST_CASE("atom edit labels are collected") {
  SetExpr s = makeUnion(makeProgression(3, 0, 0, {100}, {6}),
                        makeFinite({{41}}));
  std::vector<Label> edits = s.atomEditLabels();
  auto has = [&](const Label& x) {
    return std::find(edits.begin(), edits.end(), x) != edits.end();
  };
  CHECK(has(100));
  CHECK(has(41));
}

TEST_CASE("printing is stable") {
  SetExpr a = makeUnion(evens(), makeProduct(odds(), odds()));
  CHECK(a.str() == makeUnion(evens(), makeProduct(odds(), odds())).str());
  CHECK_FALSE(a.str().empty());
}
