// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "numeros/census.hpp"
#include "numeros/coding.hpp"
#include "numeros/counting_solver.hpp"
#include "numeros/errors.hpp"
#include "numeros/numerosity.hpp"
#include "numeros/oracle.hpp"
#include "numeros/script.hpp"
#include "numeros/setexpr.hpp"
#include "numeros/witness.hpp"

using namespace numeros;

namespace {

int failures = 0;

void report(int crit, const std::string& name, bool ok,
            const std::string& detail = "") {
  std::printf("%s  criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", crit,
              name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

SetExpr evens() { return makeProgression(2, 0); }
SetExpr naturals() { return makeProgression(1, 0); }

SetExpr randomFiniteAtom(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> lab(0, 14);
  std::uniform_int_distribution<int> count(0, 5);
  std::uniform_int_distribution<int> width(1, 2);
  std::vector<Point> pts;
  int w = width(rng);
  for (int k = count(rng); k > 0; --k) {
    Point p;
    for (int j = 0; j < w; ++j) p.emplace_back(lab(rng));
    pts.push_back(std::move(p));
  }
  return makeFinite(std::move(pts));
}

// Random expression with a finite denotation.
SetExpr randomFiniteExpr(std::mt19937_64& rng, int depth) {
  if (depth == 0) return randomFiniteAtom(rng);
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0: return randomFiniteAtom(rng);
    case 1:
      return makeUnion(randomFiniteExpr(rng, depth - 1),
                       randomFiniteExpr(rng, depth - 1));
    case 2:
      return makeIntersect(randomFiniteExpr(rng, depth - 1),
                           randomFiniteExpr(rng, depth - 1));
    case 3:
      return makeDifference(randomFiniteExpr(rng, depth - 1),
                            randomFiniteExpr(rng, depth - 1));
    default:
      return makeProduct(randomFiniteExpr(rng, depth - 1),
                         randomFiniteExpr(rng, depth - 1));
  }
}

// Random expression in the closed fragment (possibly infinite).
SetExpr randomClosedExpr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 2);
  switch (pick(rng)) {
    case 0: return randomFiniteAtom(rng);
    case 1: {
      std::uniform_int_distribution<std::uint64_t> modDist(1, 4);
      std::uint64_t m = modDist(rng);
      std::uint64_t r =
          std::uniform_int_distribution<std::uint64_t>(0, m - 1)(rng);
      return makeProgression(m, r,
                             std::uniform_int_distribution<int>(0, 5)(rng));
    }
    case 2: return makeEmpty();
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

Index randomIndex(std::mt19937_64& rng, int bound) {
  std::vector<Label> xs;
  for (int x = 0; x < bound; ++x)
    if (std::uniform_int_distribution<int>(0, 1)(rng)) xs.emplace_back(x);
  return Index(std::move(xs));
}

// --------------------------------------------------------------------------

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  bool ok = true;
  OracleState o;
  Index all = Index::ofRange(15);
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    SetExpr a = randomFiniteExpr(rng, 2);
    Nat expect(membersWithin(a, all).size());
    std::optional<Nat> got = toNatural(num(o, a));
    if (!got || *got != expect) ok = false;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  report(1, "finite sets receive their exact cardinality",
         ok && ms < 10000, std::to_string(ms) + " ms / 1000 expressions");
}

void criterion2() {
  std::mt19937_64 rng(202);
  bool ok = true;
  for (int trial = 0; trial < 120 && ok; ++trial) {
    std::uniform_int_distribution<int> sz(0, 12), lab(0, 30);
    std::vector<Point> pts;
    for (int k = sz(rng); k > 0; --k) pts.push_back({Label(lab(rng))});
    SetExpr x = makeFinite(pts);
    Index supp = Index::ofRange(31);
    Nat n = censusAt(x, supp);
    Nat expect = Nat(1) << static_cast<unsigned>(n.convert_to<std::uint64_t>());
    if (censusAt(makeFinPowerset(x), supp) != expect) ok = false;
  }
  SetExpr pe = makeFinPowerset(evens());
  for (std::uint64_t n = 0; n <= 40 && ok; ++n) {
    Index i = Index::ofRange(n);
    Nat c = censusAt(evens(), i);
    Nat expect = Nat(1) << c.convert_to<unsigned>();
    if (censusAt(pe, i) != expect) ok = false;
  }
  report(2, "finite powerset census equals 2^|X_i|", ok);
}

void criterion3() {
  std::mt19937_64 rng(303);
  bool ok = true;
  for (int pair = 0; pair < 500 && ok; ++pair) {
    SetExpr a = randomClosedExpr(rng, 2);
    SetExpr b = randomClosedExpr(rng, 2);
    SetExpr p = makeProduct(a, b);
    for (int k = 0; k < 20 && ok; ++k) {
      Index i = randomIndex(rng, 12);
      if (censusAt(p, i) != censusAt(a, i) * censusAt(b, i)) ok = false;
    }
  }
  report(3, "product census is exactly multiplicative", ok);
}

void criterion4() {
  std::mt19937_64 rng(404);
  bool ok = true;
  std::string detail;

  auto randInstances = [&](AxiomId id) {
    std::vector<std::vector<SetExpr>> inst;
    for (int k = 0; k < 200; ++k) {
      std::vector<SetExpr> tup;
      switch (id) {
        case AxiomId::E0:
        case AxiomId::UP:
        case AxiomId::CP:
          tup = {randomClosedExpr(rng, 2)};
          break;
        case AxiomId::E1:
        case AxiomId::PP:
          tup = {randomClosedExpr(rng, 2), randomClosedExpr(rng, 2),
                 randomClosedExpr(rng, 2)};
          break;
        case AxiomId::E2:
        case AxiomId::E3:
          tup = {randomClosedExpr(rng, 2), randomClosedExpr(rng, 2),
                 randomClosedExpr(rng, 2), randomClosedExpr(rng, 2)};
          break;
        default:
          tup = {randomClosedExpr(rng, 2), randomClosedExpr(rng, 2)};
          break;
      }
      inst.push_back(std::move(tup));
    }
    // seed shapes whose preconditions definitely hold
    switch (id) {
      case AxiomId::E1:
        inst.push_back({evens(), evens(), evens()});
        break;
      case AxiomId::E2:
        inst.push_back({evens(), makeProgression(2, 1), evens(),
                        makeProgression(2, 1)});
        break;
      case AxiomId::E3:
        inst.push_back({naturals(), evens(), naturals(), evens()});
        break;
      default:
        break;
    }
    return inst;
  };

  for (AxiomId id : {AxiomId::E0, AxiomId::E1, AxiomId::E2, AxiomId::E3,
                     AxiomId::E5, AxiomId::AP, AxiomId::PP, AxiomId::UP,
                     AxiomId::CP}) {
    OracleState o;
    AxiomReport rep = checkAxiom(o, id, randInstances(id));
    if (!rep.pass()) {
      ok = false;
      detail = std::string(axiomName(id)) + " failed " +
               std::to_string(rep.failed) + " instances";
      break;
    }
  }

  // E5 on explicit strict-subset pairs: remove one member point
  if (ok) {
    OracleState o;
    int done = 0;
    while (done < 200) {
      SetExpr b = randomClosedExpr(rng, 2);
      std::vector<Point> pts = membersWithin(b, Index::ofRange(10));
      if (pts.empty()) continue;
      Point p = pts[std::uniform_int_distribution<std::size_t>(
          0, pts.size() - 1)(rng)];
      SetExpr a = makeDifference(b, makeFinite({p}));
      if (o.compare(a, b).ordering != Ordering::Less) {
        ok = false;
        detail = "strict subset not Less: " + b.str();
        break;
      }
      ++done;
    }
  }
  report(4, "Euclid axiom suite (E0-E3, E5, AP, PP, UP, CP)", ok, detail);
}

void criterion5() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(505);
  bool ok = true;
  std::string detail;
  int done = 0;
  while (done < 100 && ok) {
    // strict pairs: either drop a point from a random set, or coarsen a
    // progression
    SetExpr a, b;
    if (std::uniform_int_distribution<int>(0, 1)(rng)) {
      b = randomClosedExpr(rng, 2);
      std::vector<Point> pts = membersWithin(b, Index::ofRange(9));
      if (pts.empty()) continue;
      a = makeDifference(b, makeFinite({pts[0]}));
    } else {
      std::uint64_t m = std::uniform_int_distribution<std::uint64_t>(1, 4)(rng);
      b = makeProgression(m, 0);
      a = makeProgression(2 * m, 0);
    }
    OracleState o;
    if (o.compare(a, b).ordering != Ordering::Less) continue;
    SetExpr w = subWitness(o, a, b);
    auto sched = w.witnessSchedule();
    std::size_t from = sched->commitStage();
    for (std::size_t k = from; k < from + 50 && ok; ++k) {
      const Index& i = o.chainAt(k);
      if (censusAt(a, i) + censusAt(w, i) != censusAt(b, i)) {
        ok = false;
        detail = "census identity broke at stage " + std::to_string(k);
      }
    }
    sched->ensureStage(from + 50);
    for (const auto& batch : sched->batches())
      for (const Point& p : batch.points)
        if (contains(a, p) || contains(b, p)) {
          ok = false;
          detail = "witness point collides: " + pointStr(p);
        }
    ++done;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  report(5, "subtraction witnesses verified 50 stages deep",
         ok && ms < 60000, std::to_string(ms) + " ms / 100 pairs" +
                               (detail.empty() ? "" : "; " + detail));
}

void criterion6() {
  std::mt19937_64 rng(606);
  std::vector<Label> ground = {0, 1, 2, 3};
  bool ok = true;
  std::string detail;
  for (int trial = 0; trial < 100 && ok; ++trial) {
    std::vector<long long> target(16, 0);
    for (std::size_t m = 1; m < 16; ++m)
      target[m] = std::uniform_int_distribution<long long>(-3, 3)(rng);
    CountingSolution sol = solveCounting(ground, target);
    // independent recount straight from the point lists
    for (std::size_t m = 1; m < 16 && ok; ++m) {
      std::vector<Label> xs;
      for (std::size_t b = 0; b < 4; ++b)
        if (m & (std::size_t(1) << b)) xs.emplace_back(b);
      Index i(std::move(xs));
      auto count = [&](const std::vector<Point>& pts) {
        long long c = 0;
        for (const Point& p : pts)
          if (i.containsAll(supportOf(p))) ++c;
        return c;
      };
      long long got = count(sol.aPoints) - count(sol.bPoints);
      if (got != target[m]) {
        ok = false;
        detail = "mask " + std::to_string(m) + ": got " + std::to_string(got) +
                 ", want " + std::to_string(target[m]);
      }
      if (Int(censusAt(sol.a, i)) - Int(censusAt(sol.b, i)) != Int(target[m]))
        ok = false;
    }
  }
  report(6, "counting solver hits arbitrary targets on L0={0,1,2,3}", ok,
         detail);
}

void criterion7() {
  std::mt19937_64 rng(707);
  bool ok = true;
  std::string detail;
  for (int batch = 0; batch < 20 && ok; ++batch) {
    OracleState o;
    for (int k = 0; k < 10 && ok; ++k) {
      Numerosity a = num(o, randomClosedExpr(rng, 1));
      Numerosity b = num(o, randomClosedExpr(rng, 1));
      Numerosity c = num(o, randomClosedExpr(rng, 1));
      Numerosity zero = num(o, makeEmpty());
      if (cmpNum(addNum(a, b), addNum(b, a)) != Ordering::Equal) {
        ok = false; detail = "add commutativity"; break;
      }
      if (cmpNum(mulNum(a, b), mulNum(b, a)) != Ordering::Equal) {
        ok = false; detail = "mul commutativity"; break;
      }
      if (cmpNum(addNum(addNum(a, b), c), addNum(a, addNum(b, c))) !=
          Ordering::Equal) {
        ok = false; detail = "add associativity"; break;
      }
      if (cmpNum(mulNum(a, addNum(b, c)),
                 addNum(mulNum(a, b), mulNum(a, c))) != Ordering::Equal) {
        ok = false; detail = "distributivity"; break;
      }
      // cancellation: the order (hence equality) survives adding c
      Ordering base = cmpNum(a, b);
      if (cmpNum(addNum(a, c), addNum(b, c)) != base) {
        ok = false; detail = "cancellation"; break;
      }
      // zerosumfree: a + b = 0 forces both to vanish
      if (cmpNum(addNum(a, b), zero) == Ordering::Equal &&
          (cmpNum(a, zero) != Ordering::Equal ||
           cmpNum(b, zero) != Ordering::Equal)) {
        ok = false; detail = "zerosumfree"; break;
      }
    }
  }
  report(7, "semiring laws (200 randomized instances each)", ok, detail);
}

void criterion8() {
  std::mt19937_64 rng(808);
  bool ok = true;
  std::string detail;
  const std::size_t k = 8, full = 256;
  OracleState o;
  for (int trial = 0; trial < 12 && ok; ++trial) {
    SetExpr a = randomClosedExpr(rng, 2);
    std::vector<Nat> psi(full);
    for (std::size_t m = 0; m < full; ++m) {
      std::vector<Label> xs;
      for (std::size_t b = 0; b < k; ++b)
        if (m & (std::size_t(1) << b)) xs.emplace_back(b);
      psi[m] = censusAt(a, Index(std::move(xs)));
    }
    PartitionScanReport rep = o.partitionScan(psi, k, 10000000);
    if (!rep.wellFounded || rep.maxDescentsOnMaximalChain > k) {
      ok = false;
      detail = "census-derived scan found an infinite-descent certificate";
    }
  }
  if (ok) {
    std::vector<Nat> psi(full);
    for (std::size_t m = 0; m < full; ++m) psi[m] = k - std::popcount(m);
    PartitionScanReport rep = o.partitionScan(psi, k, 10000000);
    if (rep.maxZeroChainLength != 8) {
      ok = false;
      detail = "adversarial 0-chain length " +
               std::to_string(rep.maxZeroChainLength) + ", want 8";
    }
  }
  report(8, "partition scans: monotonizable censuses, adversarial depth 8", ok,
         detail);
}

void criterion9() {
  std::mt19937_64 rng(909);
  bool ok = true;
  std::string detail;
  for (std::uint64_t n = 0; n < (1u << 16) && ok; ++n) {
    HFSet x = HFSet::decode(n);
    if (x.code() != n || x.rank() > 4) {
      ok = false;
      detail = "roundtrip failed at " + std::to_string(n);
    }
  }
  // disjoint-union homomorphism
  for (int trial = 0; trial < 200 && ok; ++trial) {
    std::uniform_int_distribution<std::uint64_t> code(0, 4000);
    std::vector<HFSet> X, Y, XY;
    std::vector<bool> used(4001, false);
    for (int j = 0; j < 6; ++j) {
      std::uint64_t c = code(rng);
      if (used[c]) continue;
      used[c] = true;
      HFSet h = HFSet::decode(c);
      (j % 2 ? Y : X).push_back(h);
      XY.push_back(h);
    }
    Index i = Index::ofRange(64).unionWith(Index({1000, 2000, 3000, 4000}));
    if (censusAt(makeUnion(codeSet(X), codeSet(Y)), i) !=
        censusAt(codeSet(XY), i)) {
      ok = false;
      detail = "disjoint-union homomorphism";
    }
  }
  // doubleton multiplicativity on pair-closed indices
  for (int trial = 0; trial < 100 && ok; ++trial) {
    std::uniform_int_distribution<std::uint64_t> code(0, 40);
    std::vector<bool> used(41, false);
    std::vector<HFSet> X, Y;
    for (int j = 0; j < 7; ++j) {
      std::uint64_t c = code(rng);
      if (used[c]) continue;
      used[c] = true;
      (j % 2 ? Y : X).push_back(HFSet::decode(c));
    }
    if (X.empty() || Y.empty()) continue;
    DoubletonProduct dp = doubletonProduct(X, Y);
    Index i = pairClosedIndex(X, Y);
    if (censusAt(dp.expr, i) !=
        censusAt(codeSet(X), i) * censusAt(codeSet(Y), i)) {
      ok = false;
      detail = "doubleton multiplicativity";
    }
  }
  report(9, "Ackermann coding: roundtrips and homomorphisms", ok, detail);
}

void criterion10() {
  std::string text;
  text += "set E = prog(2,0);\n";
  text += "set D = prog(2,1);\n";
  text += "set N = prog(1,0);\n";
  text += "set F = {1,2,3,4};\n";
  std::mt19937_64 rng(1010);
  const char* names[] = {"E", "D", "N", "F"};
  int produced = 4;
  int serial = 0;
  while (produced < 96) {
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
      case 0: {
        std::string nm = "S" + std::to_string(serial++);
        text += "set " + nm + " = prog(" +
                std::to_string(std::uniform_int_distribution<int>(1, 5)(rng)) +
                ",0);\n";
        break;
      }
      case 1:
        text += std::string("cmp ") + names[rng() % 4] + " " +
                names[rng() % 4] + ";\n";
        break;
      case 2:
        text += std::string("num ") + names[rng() % 4] + ";\n";
        break;
      case 3:
        text += std::string("axioms AP ") + names[rng() % 4] + " " +
                names[rng() % 4] + ";\n";
        break;
      case 4:
        text += std::string("scan ") + names[rng() % 4] + " 3;\n";
        break;
      default:
        text += "code {{},{{}}};\n";
        break;
    }
    ++produced;
  }
  text += "witness E N;\n";
  text += "witness F N;\n";
  text += "dump-chain;\n";
  text += "dump-chain;\n";

  Script s = parseScript(text);
  bool ok = s.commands.size() == 100;
  RunConfig cfg;
  cfg.json = true;
  cfg.chainStages = 10;
  RunResult r1 = runScript(s, cfg);
  RunResult r2 = runScript(s, cfg);
  if (r1.exitCode != 0 || r1.jsonLines != r2.jsonLines) ok = false;
  report(10, "100-command stress script replays byte-identically", ok,
         std::to_string(s.commands.size()) + " commands, exit " +
             std::to_string(r1.exitCode));
}

}  // namespace

int main() {
  void (*criteria[])() = {criterion1, criterion2, criterion3, criterion4,
                          criterion5, criterion6, criterion7, criterion8,
                          criterion9, criterion10};
  for (int k = 0; k < 10; ++k) {
    try {
      criteria[k]();
    } catch (const std::exception& e) {
      report(k + 1, "unexpected exception", false, e.what());
    }
  }
  if (failures == 0) {
    std::printf("ALL CRITERIA PASSED\n");
    return 0;
  }
  std::printf("%d criteria FAILED\n", failures);
  return 1;
}
