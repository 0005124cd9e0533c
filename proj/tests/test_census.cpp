#include <doctest.h>

#include <random>

#include "numeros/census.hpp"
#include "numeros/errors.hpp"
#include "numeros/setexpr.hpp"

using namespace numeros;

namespace {

SetExpr evens() { return makeProgression(2, 0); }
SetExpr odds() { return makeProgression(2, 1); }
SetExpr naturals() { return makeProgression(1, 0); }

// Independent census: count enumerated members.
Nat bruteCensus(const SetExpr& a, const Index& i) {
  return Nat(membersWithin(a, i).size());
}

SetExpr randomClosedExpr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 2);
  switch (pick(rng)) {
    case 0: {
      std::vector<Point> pts;
      std::uniform_int_distribution<int> lab(0, 15);
      for (int k = std::uniform_int_distribution<int>(0, 4)(rng); k > 0; --k)
        pts.push_back({Label(lab(rng))});
      return makeFinite(std::move(pts));
    }
    case 1: {
      std::uniform_int_distribution<std::uint64_t> modDist(1, 4);
      std::uint64_t m = modDist(rng);
      std::uint64_t r =
          std::uniform_int_distribution<std::uint64_t>(0, m - 1)(rng);
      return makeProgression(m, r,
                             std::uniform_int_distribution<int>(0, 6)(rng));
    }
    case 2:
      return makeEmpty();
    case 3:
      return makeUnion(randomClosedExpr(rng, depth - 1),
                       randomClosedExpr(rng, depth - 1));
    case 4:
      return makeIntersect(randomClosedExpr(rng, depth - 1),
                           randomClosedExpr(rng, depth - 1));
    case 5:
      return makeDifference(randomClosedExpr(rng, depth - 1),
                            randomClosedExpr(rng, depth - 1));
    default:
      return makeProduct(randomClosedExpr(rng, depth - 1),
                         randomClosedExpr(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("polynomial interpolation and evaluation") {
  // p(x) = x^2 - 3x + 2 through four samples
  Poly p = Poly::interpolate({{0, 2}, {1, 0}, {2, 0}, {3, 2}});
  CHECK(p.degree() == 2);
  CHECK(p.evalInt(10) == 72);
  CHECK(p.evalInt(-1) == 6);

  Poly zero = Poly::interpolate({{0, 0}, {5, 0}});
  CHECK(zero.isZero());
  CHECK(zero.signStableBound() == 0);
}

TEST_CASE("polynomial shift and sign bound") {
  Poly p = Poly::interpolate({{0, 2}, {1, 0}, {2, 0}, {3, 2}});
  Poly q = p.shifted(5);  // p(x+5) = x^2 + 7x + 12
  CHECK(q.evalInt(0) == 12);
  CHECK(q.evalInt(2) == 30);

  // leading coefficient negative: eventually negative past the bound
  Poly neg = Poly::interpolate({{0, 100}, {1, 99}, {2, 98}});
  Int n0 = neg.signStableBound();
  CHECK(neg.evalInt(n0) < 0);
  CHECK(neg.evalInt(n0 + 17) < 0);
}

TEST_CASE("census of the basic examples") {
  CHECK(censusAt(evens(), Index::ofRange(10)) == 5);
  CHECK(censusAt(evens(), Index::ofRange(11)) == 6);
  CHECK(censusAt(naturals(), Index::ofRange(40)) == 40);
  CHECK(censusAt(makeEmpty(), Index::ofRange(40)) == 0);
  CHECK(censusAt(makeProduct(evens(), odds()), Index::ofRange(10)) == 25);
  CHECK(censusAt(makeFinPowerset(evens()), Index::ofRange(8)) == 16);
}

TEST_CASE("census agrees with enumeration on random closed expressions") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 150; ++trial) {
    SetExpr a = randomClosedExpr(rng, 3);
    for (std::uint64_t n : {0ull, 3ull, 7ull, 12ull}) {
      Index i = Index::ofRange(n);
      CHECK(censusAt(a, i) == bruteCensus(a, i));
    }
    Index scattered({1, 4, 5, 9, 16});
    CHECK(censusAt(a, scattered) == bruteCensus(a, scattered));
  }
}

TEST_CASE("normal form exists exactly on the closed fragment") {
  CHECK(tryNormalForm(makeProduct(evens(), odds())).has_value());
  CHECK(tryNormalForm(makeFinPowerset(makeFinite({{1}, {2}}))).has_value());
  CHECK_FALSE(tryNormalForm(makeFinPowerset(evens())).has_value());
  CHECK(inClosedFragment(makeDifference(naturals(), evens())));
  CHECK_FALSE(inClosedFragment(makeFinPowerset(naturals())));

  auto nf = tryNormalForm(makeDifference(evens(), evens()));
  REQUIRE(nf.has_value());
  CHECK(denotesEmpty(*nf));
}

TEST_CASE("normal-form terms are disjoint and cover the set") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    SetExpr a = randomClosedExpr(rng, 3);
    auto nf = tryNormalForm(a);
    REQUIRE(nf.has_value());
    Index i = Index::ofRange(9);
    // summing per-term counts equals the census only if terms are disjoint
    Nat sum = 0;
    for (const Term& t : nf->terms) {
      Nat prod = 1;
      for (const PeriodicSet& f : t.factors) prod *= f.countIn(i);
      sum += prod;
    }
    CHECK(sum == bruteCensus(a, i));
  }
}

TEST_CASE("exact support count via Moebius inversion") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    SetExpr a = randomClosedExpr(rng, 2);
    Index i({0, 2, 3, 5});
    // brute force: members whose support is exactly i
    Nat expect = 0;
    for (const Point& p : membersWithin(a, i))
      if (supportOf(p) == i) ++expect;
    CHECK(exactSupportCount(a, i) == expect);
  }

  // the counts over all subsets of an index sum to the census
  SetExpr a = makeUnion(makeProduct(evens(), naturals()), odds());
  Index i({0, 1, 2, 3});
  Nat total = 0;
  const auto& xs = i.elements();
  for (std::size_t m = 0; m < (std::size_t(1) << xs.size()); ++m) {
    std::vector<Label> sub;
    for (std::size_t b = 0; b < xs.size(); ++b)
      if (m & (std::size_t(1) << b)) sub.push_back(xs[b]);
    total += exactSupportCount(a, Index(std::move(sub)));
  }
  CHECK(total == censusAt(a, i));
}

TEST_CASE("censusAtStage matches materialized chain indices") {
  Index forced({100, 201});
  SetExpr a = makeUnion(evens(), makeProduct(odds(), odds()));
  for (std::uint64_t n : {2ull, 5ull, 9ull, 30ull}) {
    Index i = Index::ofRange(n).unionWith(forced);
    CHECK(censusAtStage(a, n, forced) == censusAt(a, i));
  }
}

TEST_CASE("census profile is exact past validFrom") {
  Index forced;
  SetExpr a = makeUnion(makeProduct(evens(), odds()),
                        makeProgression(3, 1, 5, {0}, {7}));
  CensusProfile prof = censusProfile(a, forced);
  Nat from = prof.validFrom();
  for (Nat n = from; n < from + 100; ++n)
    CHECK(prof.eval(n) == censusAtStage(a, n, forced));
}

TEST_CASE("census profile of evens settles the n/2 pattern") {
  CensusProfile prof = censusProfile(evens(), Index());
  CHECK(prof.period() % 2 == 0);
  for (Nat n = prof.validFrom(); n < prof.validFrom() + 40; ++n) {
    Nat expect = (n + 1) / 2;
    CHECK(prof.eval(n) == expect);
  }
  CHECK_FALSE(prof.eventuallyConstant().has_value());

  CensusProfile fin = censusProfile(makeFinite({{3}, {5}}), Index());
  auto c = fin.eventuallyConstant();
  REQUIRE(c.has_value());
  CHECK(*c == 2);
}

TEST_CASE("delta profile tracks the census difference") {
  Index forced;
  SetExpr a = evens(), b = naturals();
  DeltaProfile d = deltaProfile(a, b, forced);
  for (Nat n = d.validFrom(); n < d.validFrom() + 60; ++n) {
    Int expect = Int(censusAtStage(b, n, forced)) -
                 Int(censusAtStage(a, n, forced));
    CHECK(d.eval(n) == expect);
  }
}

TEST_CASE("profiles refuse the open fragment") {
  CHECK_THROWS_AS(censusProfile(makeFinPowerset(evens()), Index()),
                  EngineError);
}
