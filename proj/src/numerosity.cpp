#include "numeros/numerosity.hpp"

#include <algorithm>

#include "numeros/census.hpp"
#include "numeros/errors.hpp"
#include "numeros/witness.hpp"

namespace numeros {

namespace {

OracleState& sharedOracle(const Numerosity& x, const Numerosity& y) {
  if (!x.oracle() || x.oracle() != y.oracle())
    throw EngineError(ErrorCode::UnsupportedExpression,
                      "numerosities belong to different oracles");
  return *x.oracle();
}

// Members of e visible inside progressively larger chain prefixes.
std::vector<Point> someMembers(OracleState& o, const SetExpr& e, std::size_t want) {
  std::vector<Point> ms;
  for (std::size_t s : {4u, 8u, 16u, 24u}) {
    ms = membersWithin(e, o.chainAt(s));
    if (ms.size() >= want) {
      ms.resize(want);
      return ms;
    }
  }
  return ms;
}

}  // namespace

Numerosity num(OracleState& oracle, SetExpr a) {
  if (!a.valid())
    throw EngineError(ErrorCode::UnsupportedExpression, "invalid expression");
  return Numerosity(&oracle, std::move(a));
}

bool provablyDisjoint(const SetExpr& a, const SetExpr& b) {
  if (a.arities().disjointFrom(b.arities())) return true;
  SetExpr iv = makeIntersect(a, b);
  if (auto nf = tryNormalForm(iv)) return nf->isEmpty();
  return false;
}

bool provablySubset(const SetExpr& a, const SetExpr& b) {
  if (auto nf = tryNormalForm(makeDifference(a, b))) return nf->isEmpty();
  return false;
}

Numerosity addNum(const Numerosity& x, const Numerosity& y) {
  OracleState& o = sharedOracle(x, y);
  const SetExpr& a = x.representative();
  const SetExpr& b = y.representative();
  if (provablyDisjoint(a, b)) return num(o, makeUnion(a, b));
  // Disjointify by (UP): b ≃ b × {(w)} with w a fresh forced unit label;
  // repeat until the arities separate.
  SetExpr z = b;
  for (int attempt = 0; attempt < 4; ++attempt) {
    Label w = o.freshUnitLabel();
    o.ensureCone(Index({w}));
    try {
      z = makeProduct(z, makeFinite({Point{w}}));
    } catch (const EngineError&) {
      throw EngineError(ErrorCode::UnsupportedExpression,
                        "cannot disjointify the sum operands");
    }
    if (provablyDisjoint(a, z)) return num(o, makeUnion(a, z));
  }
  throw EngineError(ErrorCode::UnsupportedExpression,
                    "cannot disjointify the sum operands");
}

Numerosity mulNum(const Numerosity& x, const Numerosity& y) {
  OracleState& o = sharedOracle(x, y);
  try {
    return num(o, makeProduct(x.representative(), y.representative()));
  } catch (const EngineError& e) {
    if (e.code() == ErrorCode::ArityMismatch)
      throw EngineError(ErrorCode::UnsupportedExpression,
                        "product undefined for these representatives");
    throw;
  }
}

Ordering cmpNum(const Numerosity& x, const Numerosity& y) {
  OracleState& o = sharedOracle(x, y);
  return o.compare(x.representative(), y.representative()).ordering;
}

std::optional<Nat> toNatural(const Numerosity& x) {
  if (!x.oracle()) return std::nullopt;
  OracleState& o = *x.oracle();
  const SetExpr& a = x.representative();
  if (inClosedFragment(a)) {
    try {
      return censusProfile(a, o.forced()).eventuallyConstant();
    } catch (const EngineError&) {
      // fall through to sampling
    }
  }
  // Sample the census along the chain; a constant tail decides.  (For the
  // supported non-closed shapes — witnesses, powersets of infinite sets —
  // a growing tail never stabilizes, so nullopt is the honest answer.)
  std::size_t target = std::max(o.chainLength(), std::size_t(4)) + o.config().budget;
  std::size_t window = std::max<std::size_t>(8, o.config().budget / 2);
  std::vector<Nat> vals;
  for (std::size_t k = (target > window ? target - window : 0); k < target; ++k)
    vals.push_back(censusAt(a, o.chainAt(k)));
  for (std::size_t k = 1; k < vals.size(); ++k)
    if (vals[k] != vals[0]) return std::nullopt;
  if (vals.empty()) return std::nullopt;
  return vals[0];
}

SetExpr subWitness(OracleState& oracle, SetExpr a, SetExpr b) {
  return makeWitnessExpr(buildWitnessSchedule(oracle, std::move(a), std::move(b)));
}

const char* axiomName(AxiomId id) {
  switch (id) {
    case AxiomId::E0: return "E0";
    case AxiomId::E1: return "E1";
    case AxiomId::E2: return "E2";
    case AxiomId::E3: return "E3";
    case AxiomId::E5: return "E5";
    case AxiomId::AP: return "AP";
    case AxiomId::PP: return "PP";
    case AxiomId::UP: return "UP";
    case AxiomId::CP: return "CP";
    case AxiomId::WHP: return "WHP";
    case AxiomId::SubP: return "SubP";
  }
  return "?";
}

std::optional<AxiomId> axiomFromName(const std::string& name) {
  for (AxiomId id : {AxiomId::E0, AxiomId::E1, AxiomId::E2, AxiomId::E3,
                     AxiomId::E5, AxiomId::AP, AxiomId::PP, AxiomId::UP,
                     AxiomId::CP, AxiomId::WHP, AxiomId::SubP})
    if (name == axiomName(id)) return id;
  return std::nullopt;
}

namespace {

struct InstanceOutcome {
  enum class Kind { Pass, Vacuous, Unsupported, Fail } kind = Kind::Pass;
  std::size_t stage = 0;
  std::string detail;

  static InstanceOutcome pass() { return {}; }
  static InstanceOutcome vacuous() { return {Kind::Vacuous, 0, ""}; }
  static InstanceOutcome fail(std::size_t stage, std::string d) {
    return {Kind::Fail, stage, std::move(d)};
  }
};

const SetExpr& arg(const std::vector<SetExpr>& inst, std::size_t k) {
  if (k >= inst.size())
    throw EngineError(ErrorCode::UnsupportedExpression,
                      "axiom instance has too few expressions");
  return inst[k];
}

bool nonemptyClosed(const SetExpr& e) {
  auto nf = tryNormalForm(e);
  return nf && !nf->isEmpty();
}

InstanceOutcome checkOne(OracleState& o, AxiomId axiom,
                         const std::vector<SetExpr>& inst) {
  switch (axiom) {
    case AxiomId::E0: {
      // A ≃ ∅ ⟹ A = ∅
      const SetExpr& a = arg(inst, 0);
      CompareResult cr = o.compare(a, makeEmpty());
      if (cr.ordering != Ordering::Equal) return InstanceOutcome::vacuous();
      auto nf = tryNormalForm(a);
      if (!nf) return {InstanceOutcome::Kind::Unsupported, 0, ""};
      if (!nf->isEmpty())
        return InstanceOutcome::fail(cr.evidenceStage,
                                     "nonempty set compared Equal to empty");
      return InstanceOutcome::pass();
    }
    case AxiomId::E1: {
      // A ≃ C and B ≃ C ⟹ A ≃ B
      const SetExpr &a = arg(inst, 0), &b = arg(inst, 1), &c = arg(inst, 2);
      if (o.compare(a, c).ordering != Ordering::Equal ||
          o.compare(b, c).ordering != Ordering::Equal)
        return InstanceOutcome::vacuous();
      CompareResult cr = o.compare(a, b);
      if (cr.ordering != Ordering::Equal)
        return InstanceOutcome::fail(cr.evidenceStage, "equality not transitive");
      return InstanceOutcome::pass();
    }
    case AxiomId::E2: {
      // disjoint sums of equal pieces are equal
      const SetExpr &a = arg(inst, 0), &b = arg(inst, 1);
      const SetExpr &a2 = arg(inst, 2), &b2 = arg(inst, 3);
      if (!provablyDisjoint(a, b) || !provablyDisjoint(a2, b2))
        return InstanceOutcome::vacuous();
      if (o.compare(a, a2).ordering != Ordering::Equal ||
          o.compare(b, b2).ordering != Ordering::Equal)
        return InstanceOutcome::vacuous();
      CompareResult cr = o.compare(makeUnion(a, b), makeUnion(a2, b2));
      if (cr.ordering != Ordering::Equal)
        return InstanceOutcome::fail(cr.evidenceStage, "disjoint sums differ");
      return InstanceOutcome::pass();
    }
    case AxiomId::E3: {
      // B ⊆ A, B' ⊆ A', A ≃ A', B ≃ B' ⟹ A∖B ≃ A'∖B'
      const SetExpr &a = arg(inst, 0), &b = arg(inst, 1);
      const SetExpr &a2 = arg(inst, 2), &b2 = arg(inst, 3);
      if (!provablySubset(b, a) || !provablySubset(b2, a2))
        return InstanceOutcome::vacuous();
      if (o.compare(a, a2).ordering != Ordering::Equal ||
          o.compare(b, b2).ordering != Ordering::Equal)
        return InstanceOutcome::vacuous();
      CompareResult cr =
          o.compare(makeDifference(a, b), makeDifference(a2, b2));
      if (cr.ordering != Ordering::Equal)
        return InstanceOutcome::fail(cr.evidenceStage, "differences differ");
      return InstanceOutcome::pass();
    }
    case AxiomId::E5: {
      // A ⊂ B ⟹ A ≺ B
      const SetExpr &a = arg(inst, 0), &b = arg(inst, 1);
      if (!provablySubset(a, b) || !nonemptyClosed(makeDifference(b, a)))
        return InstanceOutcome::vacuous();
      CompareResult cr = o.compare(a, b);
      if (cr.ordering != Ordering::Less)
        return InstanceOutcome::fail(cr.evidenceStage,
                                     "proper subset not strictly smaller");
      return InstanceOutcome::pass();
    }
    case AxiomId::AP: {
      // A ≃ B ⟺ A∖B ≃ B∖A
      const SetExpr &a = arg(inst, 0), &b = arg(inst, 1);
      CompareResult whole = o.compare(a, b);
      CompareResult diffs =
          o.compare(makeDifference(a, b), makeDifference(b, a));
      bool lhs = whole.ordering == Ordering::Equal;
      bool rhs = diffs.ordering == Ordering::Equal;
      if (lhs != rhs)
        return InstanceOutcome::fail(
            std::max(whole.evidenceStage, diffs.evidenceStage),
            "Aristotle biconditional fails");
      return InstanceOutcome::pass();
    }
    case AxiomId::PP: {
      // cmp(A,B) = cmp(A×C, B×C) for nonempty C
      const SetExpr &a = arg(inst, 0), &b = arg(inst, 1), &c = arg(inst, 2);
      if (!nonemptyClosed(c)) return InstanceOutcome::vacuous();
      CompareResult base = o.compare(a, b);
      CompareResult prod = o.compare(makeProduct(a, c), makeProduct(b, c));
      if (base.ordering != prod.ordering)
        return InstanceOutcome::fail(
            std::max(base.evidenceStage, prod.evidenceStage),
            "product principle violated");
      return InstanceOutcome::pass();
    }
    case AxiomId::UP: {
      // A ≃ A × {(w)}
      const SetExpr& a = arg(inst, 0);
      Label w = o.freshUnitLabel();
      o.ensureCone(Index({w}));
      CompareResult cr = o.compare(makeProduct(a, makeFinite({Point{w}})), a);
      if (cr.ordering != Ordering::Equal)
        return InstanceOutcome::fail(cr.evidenceStage, "unit principle violated");
      return InstanceOutcome::pass();
    }
    case AxiomId::CP: {
      // rename(τ, A) ≃ A for support-preserving τ
      const SetExpr& a = arg(inst, 0);
      std::vector<CongruenceSpec> taus;
      taus.push_back(
          CongruenceSpec::finiteRelabel({{Label(0), Label(1)}, {Label(1), Label(0)}}));
      ArityProfile pr = a.arities();
      if (!pr.unbounded && pr.list.size() == 1 && pr.list[0] >= 1) {
        std::size_t k = pr.list[0];
        std::vector<std::size_t> rev(k);
        for (std::size_t j = 0; j < k; ++j) rev[j] = k - 1 - j;
        taus.push_back(CongruenceSpec::componentPermutation(rev));
        taus.push_back(CongruenceSpec::regroup({k}));
      }
      for (const CongruenceSpec& tau : taus) {
        CompareResult cr = o.compare(makeRenamed(tau, a), a);
        if (cr.ordering != Ordering::Equal)
          return InstanceOutcome::fail(cr.evidenceStage,
                                       "congruence image differs: " + tau.str());
      }
      return InstanceOutcome::pass();
    }
    case AxiomId::WHP: {
      // A ⪯ B ⟹ an injection A → B exists
      const SetExpr &a = arg(inst, 0), &b = arg(inst, 1);
      CompareResult cr = o.compare(a, b);
      if (cr.ordering == Ordering::Greater) return InstanceOutcome::vacuous();
      std::optional<Nat> fa = toNatural(num(o, a));
      std::optional<Nat> fb = toNatural(num(o, b));
      if (fa && fb) {
        if (*fa > *fb)
          return InstanceOutcome::fail(cr.evidenceStage,
                                       "finite cardinalities contradict A ⪯ B");
        return InstanceOutcome::pass();
      }
      if (!fa && fb)
        return InstanceOutcome::fail(cr.evidenceStage,
                                     "infinite A compared below finite B");
      // B infinite: build a finite injection prefix in enumeration order.
      std::vector<Point> ma = someMembers(o, a, 6);
      std::vector<Point> mb = someMembers(o, b, std::max<std::size_t>(ma.size(), 6));
      if (mb.size() < std::min<std::size_t>(ma.size(), 6))
        return InstanceOutcome::fail(cr.evidenceStage,
                                     "could not enumerate enough targets");
      return InstanceOutcome::pass();
    }
    case AxiomId::SubP: {
      // A ≺ B ⟹ nonempty disjoint C with A ∪ C ≃ B
      const SetExpr &a = arg(inst, 0), &b = arg(inst, 1);
      CompareResult cr = o.compare(a, b);
      if (cr.ordering != Ordering::Less) return InstanceOutcome::vacuous();
      SetExpr c = subWitness(o, a, b);
      auto sched = c.witnessSchedule();
      std::size_t from = sched->commitStage();
      for (std::size_t k = from; k < from + 10; ++k) {
        const Index& i = o.chainAt(k);
        if (censusAt(a, i) + censusAt(c, i) != censusAt(b, i))
          return InstanceOutcome::fail(k, "witness census mismatch");
      }
      for (const auto& batch : sched->batches())
        for (const Point& p : batch.points)
          if (contains(a, p) || contains(b, p))
            return InstanceOutcome::fail(batch.stage, "witness point collides");
      return InstanceOutcome::pass();
    }
  }
  return {InstanceOutcome::Kind::Unsupported, 0, ""};
}

}  // namespace

AxiomReport checkAxiom(OracleState& oracle, AxiomId axiom,
                       const std::vector<std::vector<SetExpr>>& instances) {
  AxiomReport report;
  report.axiom = axiom;
  report.total = instances.size();
  for (std::size_t n = 0; n < instances.size(); ++n) {
    InstanceOutcome out;
    try {
      out = checkOne(oracle, axiom, instances[n]);
    } catch (const EngineError& e) {
      out = {InstanceOutcome::Kind::Unsupported, 0, e.what()};
    }
    switch (out.kind) {
      case InstanceOutcome::Kind::Pass:
        ++report.checked;
        break;
      case InstanceOutcome::Kind::Vacuous:
        ++report.vacuous;
        break;
      case InstanceOutcome::Kind::Unsupported:
        ++report.unsupported;
        break;
      case InstanceOutcome::Kind::Fail:
        ++report.checked;
        ++report.failed;
        report.failures.push_back({n, out.stage, out.detail});
        break;
    }
  }
  return report;
}

}  // namespace numeros
