#include "numeros/witness.hpp"

#include <algorithm>

#include "numeros/census.hpp"
#include "numeros/errors.hpp"
#include "numeros/oracle.hpp"

namespace numeros {

namespace {

// Largest canonical (non-reserved) component of a point / index, if any.
std::optional<Label> maxCanonical(const Point& p) {
  std::optional<Label> m;
  for (const Label& x : p)
    if (x < kReservedBand && (!m || x > *m)) m = x;
  return m;
}

std::optional<Label> maxCanonical(const Index& i) {
  std::optional<Label> m;
  for (const Label& x : i)
    if (x < kReservedBand && (!m || x > *m)) m = x;
  return m;
}

}  // namespace

// Enumerate, in deterministic order, arity-`ar` tuples over [0, high) whose
// first component drawn from the new block [low, high) sits at position j
// (earlier components stay below low), collecting `need` points outside a, b.
bool WitnessSchedule::tryExtend(std::size_t k) {
  const Index& iPrev = oracle_->chainAt(k - 1);
  const Index& iCur = oracle_->chainAt(k);
  const std::uint64_t low = oracle_->chainSizeAt(k - 1).convert_to<std::uint64_t>();
  const std::uint64_t high = oracle_->chainSizeAt(k).convert_to<std::uint64_t>();
  (void)iPrev;

  Nat deltaK = censusAt(b_, iCur) - censusAt(a_, iCur);
  if (deltaK < cumulative_) return false;
  Nat needBig = deltaK - cumulative_;
  if (needBig > 5000000)
    throw EngineError(ErrorCode::CapacityExceeded,
                      "witness batch unreasonably large at stage " +
                          std::to_string(k));
  std::size_t need = needBig.convert_to<std::size_t>();

  std::vector<Point> batch;
  batch.reserve(need);
  for (std::size_t j = 0; j < arity_ && batch.size() < need; ++j) {
    // odometer over the component ranges
    std::vector<std::uint64_t> cur(arity_, 0);
    cur[j] = low;
    bool done = (low >= high) || (j > 0 && low == 0);
    while (!done && batch.size() < need) {
      Point p;
      p.reserve(arity_);
      for (std::size_t t = 0; t < arity_; ++t) p.emplace_back(cur[t]);
      if (!contains(a_, p) && !contains(b_, p)) batch.push_back(std::move(p));
      // advance odometer (last position fastest)
      std::size_t t = arity_;
      while (t-- > 0) {
        std::uint64_t limit = (t == j) ? high : (t < j ? low : high);
        std::uint64_t base = (t == j) ? low : 0;
        if (++cur[t] < limit) break;
        cur[t] = base;
        if (t == 0) done = true;
      }
    }
  }
  if (batch.size() < need) return false;

  cumulative_ += Nat(need);
  if (need > 0) {
    for (const Point& p : batch) pointSet_.insert(p);
    batches_.push_back({k, std::move(batch)});
  }
  nextStage_ = k + 1;
  return true;
}

void WitnessSchedule::ensureStage(std::size_t k) {
  const std::size_t cap =
      startStage_ + 20 * oracle_->config().chainStages + 64;
  while (nextStage_ <= k) {
    if (nextStage_ > cap)
      throw EngineError(ErrorCode::BudgetExceeded,
                        "witness schedule materialization limit reached");
    if (!tryExtend(nextStage_))
      throw EngineError(ErrorCode::CapacityExceeded,
                        "witness schedule ran out of fresh points at stage " +
                            std::to_string(nextStage_));
  }
}

void WitnessSchedule::requireStagesFor(const Index& i) {
  std::optional<Label> m = maxCanonical(i);
  if (!m) return;
  // Any unmaterialized batch only contains points with a component at or
  // beyond the last materialized canonical size.
  while (oracle_->chainSizeAt(nextStage_ - 1) <= *m) ensureStage(nextStage_);
}

bool WitnessSchedule::containsPoint(const Point& p) {
  if (p.size() != arity_) return false;
  std::optional<Label> m = maxCanonical(p);
  if (!m) return false;
  for (const Label& x : p)
    if (x >= kReservedBand) return false;
  while (oracle_->chainSizeAt(nextStage_ - 1) <= *m) ensureStage(nextStage_);
  return pointSet_.count(p) > 0;
}

std::vector<Point> WitnessSchedule::membersWithin(const Index& i) {
  requireStagesFor(i);
  std::vector<Point> out;
  for (const Batch& b : batches_)
    for (const Point& p : b.points)
      if (i.containsAll(supportOf(p))) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

Nat WitnessSchedule::countWithin(const Index& i) {
  requireStagesFor(i);
  Nat total = 0;
  for (const Batch& b : batches_)
    for (const Point& p : b.points)
      if (i.containsAll(supportOf(p))) ++total;
  return total;
}

std::string WitnessSchedule::exportText() {
  std::string out;
  for (const Batch& b : batches_) {
    out += "stage " + std::to_string(b.stage) + ": +" +
           std::to_string(b.points.size()) + " points:";
    for (std::size_t k = 0; k < b.points.size(); ++k) {
      out += (k == 0) ? " " : ",";
      out += pointStr(b.points[k]);
    }
    out += "\n";
  }
  return out;
}

std::shared_ptr<WitnessSchedule> buildWitnessSchedule(OracleState& oracle,
                                                      SetExpr a, SetExpr b) {
  CompareResult cr = oracle.compare(a, b);
  if (cr.ordering != Ordering::Less)
    throw EngineError(ErrorCode::NotLess, "comparison is not Less");

  ArityProfile pa = a.arities(), pb = b.arities();
  if (pa.unbounded || pb.unbounded)
    throw EngineError(ErrorCode::UnsupportedExpression,
                      "witness for unbounded-arity expressions");
  std::size_t baseArity = std::max<std::size_t>(
      1, std::max(pa.list.empty() ? 0 : pa.maxArity(),
                  pb.list.empty() ? 0 : pb.maxArity()));

  static int counter = 0;
  const std::size_t depth = oracle.config().chainStages;
  const std::size_t s0 = std::max<std::size_t>(cr.evidenceStage, 1);

  // The documented arity choice max(arity(a), arity(b)) can saturate (every
  // candidate tuple may already lie in b, e.g. b = N); escalate when the
  // capacity check fails instead of giving up.
  for (std::size_t ar = baseArity; ar <= baseArity + 2; ++ar) {
    for (std::size_t k0 = s0; k0 <= s0 + 3; ++k0) {
      auto sched = std::shared_ptr<WitnessSchedule>(new WitnessSchedule());
      sched->oracle_ = &oracle;
      sched->a_ = a;
      sched->b_ = b;
      sched->arity_ = ar;
      sched->startStage_ = k0;
      sched->nextStage_ = k0;
      bool ok = true;
      for (std::size_t k = k0; k < k0 + depth && ok; ++k)
        ok = sched->tryExtend(k);
      if (!ok) continue;
      sched->label_ = "witness#" + std::to_string(counter++);
      return sched;
    }
  }
  throw EngineError(ErrorCode::CapacityExceeded,
                    "no admissible arity supplies enough fresh points");
}

}  // namespace numeros
