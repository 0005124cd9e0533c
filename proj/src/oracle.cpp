#include "numeros/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "numeros/errors.hpp"
#include "numeros/witness.hpp"

namespace numeros {

namespace {

// Atom edit labels above this are pulled into the forced cone instead of
// being allowed as profile breakpoints (the chain never materializes that far).
const Label kProfileLabelCap = 100000;

// Largest canonical prefix the chain will materialize explicitly.
const Label kIndexCap = Label(1) << 21;

struct FlagGuard {
  bool& flag;
  explicit FlagGuard(bool& f) : flag(f) { flag = true; }
  ~FlagGuard() { flag = false; }
};

Ordering flip(Ordering o) {
  switch (o) {
    case Ordering::Less: return Ordering::Greater;
    case Ordering::Greater: return Ordering::Less;
    case Ordering::Equal: return Ordering::Equal;
  }
  return Ordering::Equal;
}

int signOf(const Int& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

int wantedSign(Ordering o) {
  // sign of delta = |B| - |A|
  switch (o) {
    case Ordering::Less: return 1;
    case Ordering::Greater: return -1;
    case Ordering::Equal: return 0;
  }
  return 0;
}

}  // namespace

std::string Commitment::str() const {
  std::string s = "stage=" + std::to_string(stage);
  switch (kind) {
    case Kind::Cone:
      s += " kind=Cone params=cone=" + cone.str();
      break;
    case Kind::SignDecision:
      s += " kind=SignDecision params=a=" + a.str() + ";b=" + b.str() +
           ";sign=" + orderingName(sign) + ";residue=" + std::to_string(residue) +
           ";period=" + std::to_string(period) + ";from=" + std::to_string(fromStage);
      break;
    case Kind::Monotone:
      s += " kind=Monotone params=a=" + a.str() + ";b=" + b.str() +
           ";residue=" + std::to_string(residue) + ";period=" +
           std::to_string(period) + ";from=" + std::to_string(fromStage);
      break;
    case Kind::StrictDominance:
      s += " kind=StrictDominance params=a=" + a.str() + ";b=" + b.str() +
           ";from=" + std::to_string(fromStage);
      break;
  }
  return s;
}

OracleState::OracleState(OracleConfig config)
    : config_(config), nextUnit_(kReservedBand) {}

Label OracleState::freshUnitLabel() {
  Label v = nextUnit_;
  ++nextUnit_;
  return v;
}

void OracleState::prepare(const SetExpr& a) {
  Index big;
  for (const Label& x : a.atomEditLabels())
    if (x > kProfileLabelCap) big.insert(x);
  if (!big.empty()) ensureCone(big);
}

void OracleState::ensureCone(const Index& d) {
  Index missing = d.minus(forced_);
  if (missing.empty()) return;
  forced_ = forced_.unionWith(missing);

  Commitment c;
  c.kind = Commitment::Kind::Cone;
  c.stage = chainLength();
  c.cone = d;
  log_.push_back(c);
  minSize_.push_back(Label(0));

  for (Index& i : chain_) i = i.unionWith(missing);

  // Censuses at every chain index may have shifted; recompute the stage
  // thresholds of the closed-form sign commitments under the new cone, and
  // make sure none of them flipped sign (which would be a genuine greedy
  // inconsistency, reported rather than papered over).
  for (std::size_t idx = 0; idx < log_.size(); ++idx) {
    Commitment& c2 = log_[idx];
    if (c2.kind != Commitment::Kind::SignDecision &&
        c2.kind != Commitment::Kind::Monotone)
      continue;
    if (!inClosedFragment(c2.a) || !inClosedFragment(c2.b)) continue;
    DeltaProfile dp = deltaProfile(c2.a, c2.b, forced_);
    const Poly& q = dp.classPoly(c2.residue % dp.period());
    Label n0 = dp.validFrom();
    if (!q.isZero()) {
      if (signOf(numerator(q.leading())) != wantedSign(c2.sign) &&
          c2.kind == Commitment::Kind::SignDecision)
        throw EngineError(ErrorCode::InconsistentCommitment,
                          "cone flipped a committed comparison sign");
      Int b = q.signStableBound();
      if (Label(b) > n0) n0 = Label(b);
    } else if (c2.kind == Commitment::Kind::SignDecision &&
               c2.sign != Ordering::Equal) {
      throw EngineError(ErrorCode::InconsistentCommitment,
                        "cone flattened a committed strict comparison");
    }
    if (c2.kind == Commitment::Kind::Monotone) {
      Poly step = q.shifted(Int(c2.period)) - q;
      if (!step.isZero()) {
        Int b = step.signStableBound();
        if (Label(b) > n0) n0 = Label(b);
      }
    }
    minSize_[idx] = n0;
  }
}

void OracleState::refineClass(std::uint64_t residue, std::uint64_t period) {
  if (period % classPeriod_ != 0 || residue % classPeriod_ != classResidue_)
    throw EngineError(ErrorCode::InconsistentCommitment,
                      "residue class refinement does not extend the committed class");
  classResidue_ = residue;
  classPeriod_ = period;
}

void OracleState::appendStage() {
  if (sizes_.size() >= config_.maxChainLength)
    throw EngineError(ErrorCode::BudgetExceeded, "chain length limit reached");
  Label next;
  if (sizes_.empty()) {
    next = Label(classResidue_);
  } else {
    std::uint64_t lastRes =
        static_cast<std::uint64_t>(sizes_.back() % classPeriod_);
    std::uint64_t step =
        (classResidue_ + classPeriod_ - lastRes - 1) % classPeriod_ + 1;
    next = sizes_.back() + step;
  }
  if (next > kIndexCap)
    throw EngineError(ErrorCode::BudgetExceeded, "chain index too large");
  sizes_.push_back(next);
  chain_.push_back(
      Index::ofRange(next.convert_to<std::uint64_t>()).unionWith(forced_));
  verifyNewStage(chain_.size() - 1);
}

void OracleState::materializeTo(std::size_t k) {
  while (chain_.size() < k) appendStage();
}

const Index& OracleState::chainAt(std::size_t k) {
  materializeTo(k + 1);
  return chain_[k];
}

const Label& OracleState::chainSizeAt(std::size_t k) {
  materializeTo(k + 1);
  return sizes_[k];
}

std::size_t OracleState::stageWithSizeAtLeast(const Label& n) {
  while (sizes_.empty() || sizes_.back() < n) appendStage();
  auto it = std::lower_bound(sizes_.begin(), sizes_.end(), n);
  return static_cast<std::size_t>(it - sizes_.begin());
}

void OracleState::verifyNewStage(std::size_t k) {
  if (!config_.verifyCommitments || verifying_) return;
  FlagGuard guard(verifying_);
  const Index& i = chain_[k];
  const Label& n = sizes_[k];
  for (std::size_t idx = 0; idx < log_.size(); ++idx) {
    const Commitment& c = log_[idx];
    switch (c.kind) {
      case Commitment::Kind::Cone:
        if (!i.containsAll(c.cone))
          throw EngineError(ErrorCode::InconsistentCommitment,
                            "chain index dropped a committed cone");
        break;
      case Commitment::Kind::SignDecision: {
        if (k < c.stage || n < minSize_[idx]) break;
        if (static_cast<std::uint64_t>(n % c.period) != c.residue) break;
        Int d = Int(censusAt(c.b, i)) - Int(censusAt(c.a, i));
        if (signOf(d) != wantedSign(c.sign))
          throw EngineError(ErrorCode::InconsistentCommitment,
                            "sign decision violated at stage " + std::to_string(k));
        break;
      }
      case Commitment::Kind::Monotone: {
        if (k == 0 || k - 1 < c.stage || sizes_[k - 1] < minSize_[idx]) break;
        if (static_cast<std::uint64_t>(n % c.period) != c.residue ||
            static_cast<std::uint64_t>(sizes_[k - 1] % c.period) != c.residue)
          break;
        Int dPrev = Int(censusAt(c.b, chain_[k - 1])) - Int(censusAt(c.a, chain_[k - 1]));
        Int dCur = Int(censusAt(c.b, i)) - Int(censusAt(c.a, i));
        if (dCur < dPrev)
          throw EngineError(ErrorCode::InconsistentCommitment,
                            "monotone commitment violated at stage " + std::to_string(k));
        break;
      }
      case Commitment::Kind::StrictDominance: {
        if (k < std::max(c.stage, c.fromStage) || n < minSize_[idx]) break;
        if (!(censusAt(c.a, i) < censusAt(c.b, i)))
          throw EngineError(ErrorCode::InconsistentCommitment,
                            "strict dominance violated at stage " + std::to_string(k));
        break;
      }
    }
  }
}

CompareResult OracleState::compare(const SetExpr& a, const SetExpr& b) {
  if (a.structurallyEqual(b)) return {Ordering::Equal, chainLength()};
  for (const auto& [x, y, r] : compareMemo_) {
    if (x.structurallyEqual(a) && y.structurallyEqual(b)) return r;
    if (x.structurallyEqual(b) && y.structurallyEqual(a))
      return {flip(r.ordering), r.evidenceStage};
  }
  CompareResult result;
  if (inClosedFragment(a) && inClosedFragment(b))
    result = compareClosed(a, b);
  else
    result = compareFallback(a, b);
  compareMemo_.emplace_back(a, b, result);
  return result;
}

CompareResult OracleState::compareClosed(const SetExpr& a, const SetExpr& b) {
  prepare(a);
  prepare(b);
  DeltaProfile dp = deltaProfile(a, b, forced_);
  std::uint64_t period = std::lcm(dp.period(), classPeriod_);

  // Deterministic class choice: the preferred residue refining the current
  // committed class.  Any admissible fixed rule yields a consistent branch.
  std::uint64_t rho = 0;
  bool found = false;
  if (config_.residuePreference == OracleConfig::ResiduePreference::Lowest) {
    for (std::uint64_t r = 0; r < period && !found; ++r)
      if (r % classPeriod_ == classResidue_) {
        rho = r;
        found = true;
      }
  } else {
    for (std::uint64_t r = period; r-- > 0 && !found;)
      if (r % classPeriod_ == classResidue_) {
        rho = r;
        found = true;
      }
  }
  if (!found)
    throw EngineError(ErrorCode::InconsistentCommitment,
                      "no residue class refines the committed class");

  const Poly& q = dp.classPoly(rho % dp.period());
  Ordering ord;
  Label n0 = dp.validFrom();
  if (q.isZero()) {
    ord = Ordering::Equal;
  } else {
    ord = numerator(q.leading()) > 0 ? Ordering::Less : Ordering::Greater;
    Int bound = q.signStableBound();
    if (Label(bound) > n0) n0 = Label(bound);
  }

  refineClass(rho, period);
  std::size_t fromStage = stageWithSizeAtLeast(n0);

  Commitment sd;
  sd.kind = Commitment::Kind::SignDecision;
  sd.stage = chainLength();
  sd.a = a;
  sd.b = b;
  sd.sign = ord;
  sd.residue = rho;
  sd.period = period;
  sd.fromStage = fromStage;
  log_.push_back(sd);
  minSize_.push_back(n0);

  if (ord != Ordering::Greater) {
    // delta restricted to one residue class is a single polynomial, hence
    // eventually monotone; commit it so subtraction witnesses can rely on it.
    Poly step = q.shifted(Int(period)) - q;
    if (step.isZero() || numerator(step.leading()) > 0) {
      Label n1 = n0;
      if (!step.isZero()) {
        Int bound = step.signStableBound();
        if (Label(bound) > n1) n1 = Label(bound);
      }
      Commitment mo;
      mo.kind = Commitment::Kind::Monotone;
      mo.stage = chainLength();
      mo.a = a;
      mo.b = b;
      mo.sign = ord;
      mo.residue = rho;
      mo.period = period;
      mo.fromStage = stageWithSizeAtLeast(n1);
      log_.push_back(mo);
      minSize_.push_back(n1);
    }
  }
  return {ord, fromStage};
}

CompareResult OracleState::compareFallback(const SetExpr& a, const SetExpr& b) {
  prepare(a);
  prepare(b);
  std::size_t target = std::max(chainLength(), std::size_t(4)) + config_.budget;
  materializeTo(target);

  std::vector<Int> delta(target);
  for (std::size_t k = 0; k < target; ++k)
    delta[k] = Int(censusAt(b, chain_[k])) - Int(censusAt(a, chain_[k]));

  // Longest suffix of constant sign.
  std::size_t s = target - 1;
  while (s > 0 && signOf(delta[s - 1]) == signOf(delta[target - 1])) --s;
  std::size_t suffixLen = target - s;
  if (suffixLen < std::min<std::size_t>(8, std::max<std::size_t>(2, config_.budget / 2)))
    throw EngineError(ErrorCode::UnsupportedExpression,
                      "comparison did not stabilize within the stage budget");

  int sg = signOf(delta[target - 1]);
  Ordering ord = sg > 0 ? Ordering::Less : (sg < 0 ? Ordering::Greater : Ordering::Equal);

  Commitment sd;
  sd.kind = Commitment::Kind::SignDecision;
  sd.stage = chainLength();
  sd.a = a;
  sd.b = b;
  sd.sign = ord;
  sd.residue = classResidue_;
  sd.period = classPeriod_;
  sd.fromStage = s;
  log_.push_back(sd);
  minSize_.push_back(sizes_[s]);

  if (ord != Ordering::Greater) {
    bool monotone = true;
    for (std::size_t k = s + 1; k < target && monotone; ++k)
      monotone = delta[k] >= delta[k - 1];
    if (monotone) {
      Commitment mo;
      mo.kind = Commitment::Kind::Monotone;
      mo.stage = chainLength();
      mo.a = a;
      mo.b = b;
      mo.sign = ord;
      mo.residue = classResidue_;
      mo.period = classPeriod_;
      mo.fromStage = s;
      log_.push_back(mo);
      minSize_.push_back(sizes_[s]);
    }
  }
  return {ord, s};
}

void OracleState::commitStrictDominance(const SetExpr& a, const SetExpr& b) {
  CompareResult cr = compare(a, b);
  if (cr.ordering != Ordering::Less)
    throw EngineError(ErrorCode::NotDominated,
                      "censuses do not strictly dominate along the chain");
  Commitment c;
  c.kind = Commitment::Kind::StrictDominance;
  c.stage = chainLength();
  c.a = a;
  c.b = b;
  c.fromStage = cr.evidenceStage;
  log_.push_back(c);
  minSize_.push_back(chainSizeAt(cr.evidenceStage));
  // Check it on everything materialized so far past the evidence stage.
  for (std::size_t k = cr.evidenceStage; k < chainLength(); ++k)
    if (!(censusAt(a, chain_[k]) < censusAt(b, chain_[k])))
      throw EngineError(ErrorCode::NotDominated,
                        "strictness fails at stage " + std::to_string(k));
}

PartitionScanReport OracleState::partitionScan(const std::vector<Nat>& psiTable,
                                               std::size_t groundSize,
                                               std::size_t maxChain) {
  const std::size_t k = groundSize;
  if (k > config_.partitionGroundCap || k >= 26)
    throw EngineError(ErrorCode::BudgetExceeded,
                      "partition scan ground set too large");
  const std::size_t n = std::size_t(1) << k;
  if (psiTable.size() != n)
    throw EngineError(ErrorCode::MalformedAtom,
                      "psi table must cover all subsets of the ground set");
  if (std::pow(3.0, double(k)) > double(maxChain))
    throw EngineError(ErrorCode::BudgetExceeded,
                      "exhaustive partition scan exceeds the budget");

  auto maskIndex = [&](std::size_t m) {
    std::vector<Label> xs;
    for (std::size_t b = 0; b < k; ++b)
      if (m & (std::size_t(1) << b)) xs.emplace_back(b);
    return Index(std::move(xs));
  };

  PartitionScanReport report;

  // Longest strict-descent chain over the full subset order (steps counted).
  std::vector<std::size_t> len(n, 0);
  std::vector<std::ptrdiff_t> prev(n, -1);
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t s = (m - 1) & m;; s = (s - 1) & m) {
      if (psiTable[s] > psiTable[m] && len[s] + 1 > len[m]) {
        len[m] = len[s] + 1;
        prev[m] = static_cast<std::ptrdiff_t>(s);
      }
      if (s == 0) break;
    }
  }
  std::size_t best = 0;
  for (std::size_t m = 0; m < n; ++m)
    if (len[m] > len[best]) best = m;
  report.maxZeroChainLength = len[best];
  if (len[best] > 0) {
    std::vector<std::size_t> masks;
    for (std::ptrdiff_t m = static_cast<std::ptrdiff_t>(best); m >= 0; m = prev[m]) {
      masks.push_back(static_cast<std::size_t>(m));
      if (prev[m] < 0) break;
    }
    std::reverse(masks.begin(), masks.end());
    for (std::size_t m : masks) report.longestZeroChain.push_back(maskIndex(m));
  }

  // Most descents along a single maximal (covering) chain from ∅ to [0,k).
  std::vector<std::size_t> desc(n, 0);
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t b = 0; b < k; ++b) {
      if (!(m & (std::size_t(1) << b))) continue;
      std::size_t p = m ^ (std::size_t(1) << b);
      std::size_t v = desc[p] + (psiTable[p] > psiTable[m] ? 1 : 0);
      desc[m] = std::max(desc[m], v);
    }
  }
  report.maxDescentsOnMaximalChain = desc[n - 1];
  // Every maximal chain has at most k steps, so descent counts are finite.
  report.wellFounded = desc[n - 1] <= k;

  // A covering chain to the top along which psi never descends.
  std::vector<char> reach(n, 0);
  std::vector<std::ptrdiff_t> prevH(n, -1);
  reach[0] = 1;
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t b = 0; b < k; ++b) {
      if (!(m & (std::size_t(1) << b))) continue;
      std::size_t p = m ^ (std::size_t(1) << b);
      if (reach[p] && psiTable[p] <= psiTable[m]) {
        reach[m] = 1;
        prevH[m] = static_cast<std::ptrdiff_t>(p);
        break;
      }
    }
  }
  if (reach[n - 1]) {
    std::vector<std::size_t> masks;
    std::size_t m = n - 1;
    while (true) {
      masks.push_back(m);
      if (m == 0) break;
      m = static_cast<std::size_t>(prevH[m]);
    }
    std::reverse(masks.begin(), masks.end());
    std::vector<Index> chain;
    for (std::size_t mm : masks) chain.push_back(maskIndex(mm));
    report.homogeneousCofinal = std::move(chain);
  }
  return report;
}

std::string OracleState::dumpCommitments() const {
  std::string out;
  for (const Commitment& c : log_) {
    out += c.str();
    out += "\n";
  }
  return out;
}

}  // namespace numeros
