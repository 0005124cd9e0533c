#include "numeros/census.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "numeros/errors.hpp"
#include "numeros/witness.hpp"

namespace numeros {

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::interpolate(const std::vector<std::pair<Int, Int>>& samples) {
  // Newton divided differences, expanded to the monomial basis.
  const std::size_t n = samples.size();
  std::vector<Rat> xs(n), dd(n);
  for (std::size_t k = 0; k < n; ++k) {
    xs[k] = Rat(samples[k].first);
    dd[k] = Rat(samples[k].second);
  }
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t k = n - 1; k >= level; --k)
      dd[k] = (dd[k] - dd[k - 1]) / (xs[k] - xs[k - level]);

  std::vector<Rat> acc;                 // running result
  std::vector<Rat> basis = {Rat(1)};    // Π_{l<j} (x - x_l)
  for (std::size_t j = 0; j < n; ++j) {
    if (acc.size() < basis.size()) acc.resize(basis.size(), Rat(0));
    for (std::size_t k = 0; k < basis.size(); ++k) acc[k] += dd[j] * basis[k];
    if (j + 1 < n) {
      // basis *= (x - xs[j])
      std::vector<Rat> next(basis.size() + 1, Rat(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * xs[j];
      }
      basis = std::move(next);
    }
  }
  return Poly(std::move(acc));
}

Rat Poly::evalRat(const Rat& x) const {
  Rat v = 0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) v = v * x + coeffs_[k];
  return v;
}

Int Poly::evalInt(const Int& x) const {
  Rat v = evalRat(Rat(x));
  if (denominator(v) != 1)
    throw EngineError(ErrorCode::UnsupportedExpression,
                      "polynomial not integral at " + x.str());
  return numerator(v);
}

Poly Poly::operator-(const Poly& other) const {
  std::vector<Rat> out(std::max(coeffs_.size(), other.coeffs_.size()), Rat(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] += coeffs_[k];
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) out[k] -= other.coeffs_[k];
  return Poly(std::move(out));
}

Poly Poly::shifted(const Int& delta) const {
  // p(x + delta) via Horner: out = out * (x + delta) + c_k.
  if (coeffs_.empty()) return Poly();
  std::vector<Rat> out(coeffs_.size(), Rat(0));
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    std::vector<Rat> next(out.size(), Rat(0));
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (out[j] == 0) continue;
      if (j + 1 < next.size()) next[j + 1] += out[j];
      next[j] += out[j] * Rat(delta);
    }
    next[0] += coeffs_[k];
    out = std::move(next);
  }
  return Poly(std::move(out));
}

Int Poly::signStableBound() const {
  if (coeffs_.empty()) return 0;
  const std::size_t d = coeffs_.size() - 1;
  if (d == 0) return 0;
  // Cauchy root bound: every real root lies below 1 + max |c_i / c_d|.
  Rat maxRatio = 0;
  for (std::size_t k = 0; k < d; ++k) {
    Rat r = abs(coeffs_[k] / coeffs_[d]);
    if (r > maxRatio) maxRatio = r;
  }
  Int num = numerator(maxRatio), den = denominator(maxRatio);
  return 2 + (num + den - 1) / den;
}

std::string Poly::str() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (coeffs_[k] == 0) continue;
    if (!s.empty()) s += " + ";
    s += "(" + coeffs_[k].str() + ")";
    if (k >= 1) s += "*n";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------
// Normal form

namespace {

constexpr std::size_t kTermCap = 20000;
constexpr std::size_t kPowersetMemberCap = 14;
constexpr std::uint64_t kPeriodCap = 1000000;

std::optional<Term> termIntersect(const Term& t, const Term& u) {
  if (t.arity() != u.arity()) return std::nullopt;
  Term out;
  out.factors.reserve(t.arity());
  for (std::size_t k = 0; k < t.arity(); ++k) {
    PeriodicSet f = t.factors[k].intersect(u.factors[k]);
    if (f.isEmpty()) return std::nullopt;
    out.factors.push_back(std::move(f));
  }
  return out;
}

// t \ u as a disjoint list: split by the first coordinate escaping u.
std::vector<Term> termSubtract(const Term& t, const Term& u) {
  if (t.arity() != u.arity()) return {t};
  if (t.arity() == 0) return {};
  std::vector<Term> out;
  std::vector<PeriodicSet> prefix;  // running coordinatewise intersection
  for (std::size_t k = 0; k < t.arity(); ++k) {
    PeriodicSet diff = t.factors[k].subtract(u.factors[k]);
    if (!diff.isEmpty()) {
      Term piece;
      piece.factors = prefix;
      piece.factors.push_back(std::move(diff));
      for (std::size_t l = k + 1; l < t.arity(); ++l)
        piece.factors.push_back(t.factors[l]);
      if (!piece.isEmpty()) out.push_back(std::move(piece));
    }
    PeriodicSet iv = t.factors[k].intersect(u.factors[k]);
    if (iv.isEmpty()) break;  // later pieces would carry an empty prefix
    prefix.push_back(std::move(iv));
  }
  return out;
}

// out := out ∪ t, keeping the terms of out pairwise disjoint.
void addDisjoint(std::vector<Term>& out, const Term& t) {
  std::vector<Term> pieces = {t};
  for (const Term& a : out) {
    std::vector<Term> next;
    for (const Term& p : pieces) {
      auto sub = termSubtract(p, a);
      next.insert(next.end(), std::make_move_iterator(sub.begin()),
                  std::make_move_iterator(sub.end()));
    }
    pieces = std::move(next);
    if (pieces.empty()) return;
  }
  for (Term& p : pieces)
    if (!p.isEmpty()) out.push_back(std::move(p));
  if (out.size() > kTermCap)
    throw EngineError(ErrorCode::UnsupportedExpression,
                      "normal form exceeds the term budget");
}

std::optional<std::vector<Term>> nfTerms(const SetExpr& a);

std::optional<std::vector<Term>> nfPowerset(const SetExpr& inner) {
  auto in = nfTerms(inner);
  if (!in) return std::nullopt;
  std::vector<Label> members;
  for (const Term& t : *in) {
    const PeriodicSet& f = t.factors.at(0);
    if (!f.isFinite()) return std::nullopt;
    for (const Label& e : f.edits())
      if (f.contains(e)) members.push_back(e);
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.size() > kPowersetMemberCap) return std::nullopt;
  std::vector<Term> out;
  const std::size_t m = members.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
    Term t;
    for (std::size_t k = 0; k < m; ++k)
      if (mask & (std::uint64_t(1) << k))
        t.factors.push_back(PeriodicSet::singleton(members[k]));
    out.push_back(std::move(t));  // increasing components: canonical subset tuple
  }
  return out;
}

std::optional<std::vector<Term>> nfTerms(const SetExpr& a) {
  switch (a.kind()) {
    case ExprKind::Empty:
      return std::vector<Term>{};
    case ExprKind::Finite: {
      std::vector<Term> out;
      for (const Point& p : a.points()) {
        Term t;
        for (const Label& x : p) t.factors.push_back(PeriodicSet::singleton(x));
        out.push_back(std::move(t));
      }
      return out;
    }
    case ExprKind::Progression: {
      Term t;
      t.factors.push_back(a.periodic());
      return std::vector<Term>{std::move(t)};
    }
    case ExprKind::Union: {
      auto l = nfTerms(a.left()), r = nfTerms(a.right());
      if (!l || !r) return std::nullopt;
      std::vector<Term> out = std::move(*l);
      for (const Term& t : *r) addDisjoint(out, t);
      return out;
    }
    case ExprKind::Intersect: {
      auto l = nfTerms(a.left()), r = nfTerms(a.right());
      if (!l || !r) return std::nullopt;
      std::vector<Term> out;
      for (const Term& t : *l)
        for (const Term& u : *r)
          if (auto iv = termIntersect(t, u)) {
            out.push_back(std::move(*iv));
            if (out.size() > kTermCap)
              throw EngineError(ErrorCode::UnsupportedExpression,
                                "normal form exceeds the term budget");
          }
      // terms of l are disjoint, so the intersections are too
      return out;
    }
    case ExprKind::Difference: {
      auto l = nfTerms(a.left()), r = nfTerms(a.right());
      if (!l || !r) return std::nullopt;
      std::vector<Term> cur = std::move(*l);
      for (const Term& u : *r) {
        std::vector<Term> next;
        for (const Term& t : cur) {
          auto sub = termSubtract(t, u);
          next.insert(next.end(), std::make_move_iterator(sub.begin()),
                      std::make_move_iterator(sub.end()));
        }
        cur = std::move(next);
        if (cur.size() > kTermCap)
          throw EngineError(ErrorCode::UnsupportedExpression,
                            "normal form exceeds the term budget");
      }
      return cur;
    }
    case ExprKind::Product: {
      auto l = nfTerms(a.left()), r = nfTerms(a.right());
      if (!l || !r) return std::nullopt;
      std::vector<Term> out;
      for (const Term& t : *l)
        for (const Term& u : *r) {
          Term c;
          c.factors = t.factors;
          c.factors.insert(c.factors.end(), u.factors.begin(), u.factors.end());
          // mixed-arity operands can make distinct splits overlap, so
          // re-disjointify instead of appending
          addDisjoint(out, c);
        }
      return out;
    }
    case ExprKind::Renamed: {
      auto in = nfTerms(a.inner());
      if (!in) return std::nullopt;
      const CongruenceSpec& tau = a.congruence();
      switch (tau.kind) {
        case CongruenceSpec::Kind::Regroup:
          return in;
        case CongruenceSpec::Kind::ComponentPermutation: {
          std::vector<Term> out;
          for (const Term& t : *in) {
            Term s;
            s.factors.resize(t.arity());
            for (std::size_t j = 0; j < t.arity(); ++j)
              s.factors[j] = t.factors[tau.permutation[j]];
            out.push_back(std::move(s));
          }
          return out;
        }
        case CongruenceSpec::Kind::FiniteRelabel: {
          std::vector<Term> out;
          for (const Term& t : *in) {
            Term s;
            for (const PeriodicSet& f : t.factors)
              s.factors.push_back(f.relabel(tau.relabel));
            out.push_back(std::move(s));
          }
          return out;
        }
      }
      return std::nullopt;
    }
    case ExprKind::FinPowerset:
      return nfPowerset(a.inner());
    case ExprKind::Witness:
      return std::nullopt;
  }
  return std::nullopt;
}

using NfCache =
    std::unordered_map<SetExpr, std::optional<NormalForm>, SetExprHash, SetExprEq>;
NfCache& nfCache() {
  static NfCache cache;
  return cache;
}

}  // namespace

std::optional<NormalForm> tryNormalForm(const SetExpr& a) {
  auto& cache = nfCache();
  if (auto it = cache.find(a); it != cache.end()) return it->second;
  std::optional<NormalForm> out;
  if (auto terms = nfTerms(a)) {
    NormalForm nf;
    for (Term& t : *terms)
      if (!t.isEmpty()) nf.terms.push_back(std::move(t));
    out = std::move(nf);
  }
  cache.emplace(a, out);
  return out;
}

bool inClosedFragment(const SetExpr& a) { return tryNormalForm(a).has_value(); }

bool denotesEmpty(const NormalForm& nf) { return nf.terms.empty(); }

// ---------------------------------------------------------------------------
// Counting

namespace {

Nat censusOfNormalForm(const NormalForm& nf, const Index& i) {
  Nat total = 0;
  for (const Term& t : nf.terms) {
    Nat prod = 1;
    for (const PeriodicSet& f : t.factors) {
      prod *= f.countIn(i);
      if (prod == 0) break;
    }
    total += prod;
  }
  return total;
}

bool uniformArity(const SetExpr& a) {
  ArityProfile p = a.arities();
  return !p.unbounded && p.list.size() <= 1;
}

using CensusMemo = std::unordered_map<
    SetExpr, std::unordered_map<Index, Nat, IndexHash>, SetExprHash, SetExprEq>;
CensusMemo& censusMemo() {
  static CensusMemo memo;
  return memo;
}

}  // namespace

Nat censusAt(const SetExpr& a, const Index& i) {
  auto& byExpr = censusMemo()[a];
  if (auto it = byExpr.find(i); it != byExpr.end()) return it->second;

  Nat v;
  if (auto nf = tryNormalForm(a)) {
    v = censusOfNormalForm(*nf, i);
  } else {
    switch (a.kind()) {
      case ExprKind::FinPowerset: {
        Nat e = censusAt(a.inner(), i);
        if (e > 4096)
          throw EngineError(ErrorCode::BudgetExceeded,
                            "finite powerset census too large at " + i.str());
        v = Nat(1) << e.convert_to<unsigned>();
        break;
      }
      case ExprKind::Product:
        if (uniformArity(a.left()) || uniformArity(a.right())) {
          v = censusAt(a.left(), i) * censusAt(a.right(), i);
        } else {
          v = Nat(membersWithin(a, i).size());
        }
        break;
      case ExprKind::Union:
        v = censusAt(a.left(), i) + censusAt(a.right(), i) -
            censusAt(makeIntersect(a.left(), a.right()), i);
        break;
      case ExprKind::Difference:
        v = censusAt(a.left(), i) -
            censusAt(makeIntersect(a.left(), a.right()), i);
        break;
      case ExprKind::Renamed:
        if (a.congruence().kind == CongruenceSpec::Kind::FiniteRelabel)
          v = Nat(membersWithin(a, i).size());
        else
          v = censusAt(a.inner(), i);
        break;
      case ExprKind::Witness:
        v = a.witnessSchedule()->countWithin(i);
        break;
      default:
        v = Nat(membersWithin(a, i).size());
        break;
    }
  }
  byExpr.emplace(i, v);
  return v;
}

Nat exactSupportCount(const SetExpr& a, const Index& i) {
  if (i.size() > 22)
    throw EngineError(ErrorCode::BudgetExceeded,
                      "support count over an index of size " +
                          std::to_string(i.size()));
  const auto& elems = i.elements();
  const std::uint64_t full = std::uint64_t(1) << elems.size();
  Int total = 0;
  for (std::uint64_t mask = 0; mask < full; ++mask) {
    std::vector<Label> sub;
    for (std::size_t k = 0; k < elems.size(); ++k)
      if (mask & (std::uint64_t(1) << k)) sub.push_back(elems[k]);
    Int sign = ((elems.size() - sub.size()) % 2 == 0) ? 1 : -1;
    total += sign * Int(censusAt(a, Index(std::move(sub))));
  }
  if (total < 0)
    throw EngineError(ErrorCode::UnsupportedExpression,
                      "negative support count (inconsistent censuses)");
  return Nat(total);
}

Nat censusAtStage(const NormalForm& nf, const Label& n, const Index& forced) {
  Nat total = 0;
  for (const Term& t : nf.terms) {
    Nat prod = 1;
    for (const PeriodicSet& f : t.factors) {
      Nat c = f.countBelow(n);
      for (const Label& x : forced)
        if (x >= n && f.contains(x)) ++c;
      prod *= c;
      if (prod == 0) break;
    }
    total += prod;
  }
  return total;
}

Nat censusAtStage(const SetExpr& a, const Label& n, const Index& forced) {
  auto nf = tryNormalForm(a);
  if (!nf)
    throw EngineError(ErrorCode::UnsupportedExpression,
                      "no closed stage census for " + a.str());
  return censusAtStage(*nf, n, forced);
}

// ---------------------------------------------------------------------------
// Profiles

Nat CensusProfile::eval(const Label& n) const {
  std::uint64_t rho = static_cast<std::uint64_t>(n % period_);
  Int v = classes_[rho].evalInt(Int(n));
  if (v < 0)
    throw EngineError(ErrorCode::UnsupportedExpression, "negative census value");
  return Nat(v);
}

int CensusProfile::degree() const {
  int d = -1;
  for (const Poly& p : classes_) d = std::max(d, p.degree());
  return d;
}

std::optional<Nat> CensusProfile::eventuallyConstant() const {
  if (degree() > 0) return std::nullopt;
  Rat c0 = classes_.empty() ? Rat(0) : classes_[0].evalRat(Rat(0));
  for (const Poly& p : classes_)
    if (p.evalRat(Rat(0)) != c0) return std::nullopt;
  if (denominator(c0) != 1 || c0 < 0) return std::nullopt;
  return Nat(numerator(c0));
}

CensusProfile censusProfile(const SetExpr& a, const Index& forced) {
  auto nf = tryNormalForm(a);
  if (!nf)
    throw EngineError(ErrorCode::UnsupportedExpression,
                      "no counting profile for " + a.str());

  std::uint64_t period = 1;
  for (const Term& t : nf->terms)
    for (const PeriodicSet& f : t.factors) {
      period = std::lcm(period, f.modulus());
      if (period > kPeriodCap)
        throw EngineError(ErrorCode::BudgetExceeded,
                          "combined progression period too large");
    }

  Label validFrom = 0;
  for (const Term& t : nf->terms)
    for (const PeriodicSet& f : t.factors)
      for (const Label& e : f.edits())
        if (!forced.contains(e) && e + 1 > validFrom) validFrom = e + 1;

  const std::size_t d = nf->maxArity();
  std::vector<Poly> classes;
  classes.reserve(period);
  for (std::uint64_t rho = 0; rho < period; ++rho) {
    Label base = validFrom + ((Label(rho) + period - validFrom % period) % period);
    std::vector<std::pair<Int, Int>> samples;
    for (std::size_t j = 0; j <= d; ++j) {
      Label x = base + Label(j) * period;
      samples.emplace_back(Int(x), Int(censusAtStage(*nf, x, forced)));
    }
    classes.push_back(Poly::interpolate(samples));
  }
  return CensusProfile(period, validFrom, std::move(classes), forced);
}

Int DeltaProfile::eval(const Label& n) const {
  std::uint64_t rho = static_cast<std::uint64_t>(n % period_);
  return classes_[rho].evalInt(Int(n));
}

DeltaProfile deltaProfile(const SetExpr& a, const SetExpr& b, const Index& forced) {
  CensusProfile pa = censusProfile(a, forced);
  CensusProfile pb = censusProfile(b, forced);
  std::uint64_t period = std::lcm(pa.period(), pb.period());
  if (period > kPeriodCap)
    throw EngineError(ErrorCode::BudgetExceeded,
                      "combined progression period too large");
  Label validFrom = std::max(pa.validFrom(), pb.validFrom());
  std::vector<Poly> classes;
  classes.reserve(period);
  for (std::uint64_t rho = 0; rho < period; ++rho)
    classes.push_back(pb.classPoly(rho % pb.period()) -
                      pa.classPoly(rho % pa.period()));
  return DeltaProfile(period, validFrom, std::move(classes));
}

}  // namespace numeros
