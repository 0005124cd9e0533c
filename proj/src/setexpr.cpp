#include "numeros/setexpr.hpp"

#include <algorithm>
#include <set>

#include "numeros/errors.hpp"
#include "numeros/witness.hpp"

namespace numeros {

// ---------------------------------------------------------------------------
// CongruenceSpec

CongruenceSpec CongruenceSpec::componentPermutation(std::vector<std::size_t> perm) {
  std::vector<std::size_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    if (sorted[k] != k)
      throw EngineError(ErrorCode::MalformedAtom, "not a permutation");
  CongruenceSpec c;
  c.kind = Kind::ComponentPermutation;
  c.permutation = std::move(perm);
  return c;
}

CongruenceSpec CongruenceSpec::regroup(std::vector<std::size_t> blockSizes) {
  if (blockSizes.empty())
    throw EngineError(ErrorCode::MalformedAtom, "empty regroup");
  for (std::size_t b : blockSizes)
    if (b == 0) throw EngineError(ErrorCode::MalformedAtom, "zero regroup block");
  CongruenceSpec c;
  c.kind = Kind::Regroup;
  c.groups = std::move(blockSizes);
  return c;
}

CongruenceSpec CongruenceSpec::finiteRelabel(
    std::vector<std::pair<Label, Label>> map) {
  std::vector<Label> dom, ran;
  for (const auto& [a, b] : map) {
    dom.push_back(a);
    ran.push_back(b);
  }
  std::sort(dom.begin(), dom.end());
  std::sort(ran.begin(), ran.end());
  if (std::adjacent_find(dom.begin(), dom.end()) != dom.end() ||
      std::adjacent_find(ran.begin(), ran.end()) != ran.end())
    throw EngineError(ErrorCode::MalformedAtom, "relabel map not injective");
  if (dom != ran)
    throw EngineError(ErrorCode::MalformedAtom,
                      "relabel domain must equal its range as a set");
  CongruenceSpec c;
  c.kind = Kind::FiniteRelabel;
  c.relabel = std::move(map);
  return c;
}

Index CongruenceSpec::relabelBlock() const {
  std::vector<Label> labels;
  for (const auto& [a, b] : relabel) {
    labels.push_back(a);
    labels.push_back(b);
  }
  return Index(std::move(labels));
}

Point CongruenceSpec::apply(const Point& p) const {
  switch (kind) {
    case Kind::ComponentPermutation: {
      Point out(p.size());
      for (std::size_t j = 0; j < p.size(); ++j) out[j] = p[permutation[j]];
      return out;
    }
    case Kind::Regroup:
      return p;
    case Kind::FiniteRelabel: {
      Point out = p;
      for (auto& x : out)
        for (const auto& [from, to] : relabel)
          if (x == from) {
            x = to;
            break;
          }
      return out;
    }
  }
  return p;
}

Point CongruenceSpec::applyInverse(const Point& p) const {
  switch (kind) {
    case Kind::ComponentPermutation: {
      Point out(p.size());
      for (std::size_t j = 0; j < p.size(); ++j) out[permutation[j]] = p[j];
      return out;
    }
    case Kind::Regroup:
      return p;
    case Kind::FiniteRelabel: {
      Point out = p;
      for (auto& x : out)
        for (const auto& [from, to] : relabel)
          if (x == to) {
            x = from;
            break;
          }
      return out;
    }
  }
  return p;
}

std::string CongruenceSpec::str() const {
  std::string s;
  switch (kind) {
    case Kind::ComponentPermutation: {
      s = "perm[";
      for (std::size_t k = 0; k < permutation.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(permutation[k] + 1);
      }
      return s + "]";
    }
    case Kind::Regroup: {
      s = "regroup[";
      for (std::size_t k = 0; k < groups.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(groups[k]);
      }
      return s + "]";
    }
    case Kind::FiniteRelabel: {
      s = "relabel{";
      for (std::size_t k = 0; k < relabel.size(); ++k) {
        if (k) s += ",";
        s += relabel[k].first.str() + "->" + relabel[k].second.str();
      }
      return s + "}";
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// ArityProfile

bool ArityProfile::admits(std::size_t n) const {
  if (unbounded) return true;
  return std::binary_search(list.begin(), list.end(), n);
}

bool ArityProfile::disjointFrom(const ArityProfile& other) const {
  if (unbounded || other.unbounded) return false;
  std::vector<std::size_t> common;
  std::set_intersection(list.begin(), list.end(), other.list.begin(),
                        other.list.end(), std::back_inserter(common));
  return common.empty();
}

std::size_t ArityProfile::maxArity() const {
  if (unbounded)
    throw EngineError(ErrorCode::UnsupportedExpression,
                      "no maximal arity: expression has unbounded tuple length");
  return list.empty() ? 0 : list.back();
}

bool ArityProfile::containsZero() const {
  return unbounded || (!list.empty() && list.front() == 0);
}

// ---------------------------------------------------------------------------
// Node

struct SetExpr::Node {
  ExprKind kind = ExprKind::Empty;
  std::vector<Point> pts;
  PeriodicSet per;
  ProgressionParams prog;
  SetExpr l, r, in;
  CongruenceSpec cong;
  std::shared_ptr<WitnessSchedule> wit;
  ArityProfile arity;
  std::size_t hashv = 0;
};

namespace {

std::size_t computeHash(const SetExpr::Node& n) {
  std::size_t seed = static_cast<std::size_t>(n.kind) * 0x9e3779b97f4a7c15ULL;
  switch (n.kind) {
    case ExprKind::Empty:
      break;
    case ExprKind::Finite:
      for (const auto& p : n.pts) hashCombine(seed, PointHash{}(p));
      break;
    case ExprKind::Progression:
      hashCombine(seed, n.per.hash());
      break;
    case ExprKind::Union:
    case ExprKind::Intersect:
    case ExprKind::Difference:
    case ExprKind::Product:
      hashCombine(seed, n.l.hash());
      hashCombine(seed, n.r.hash());
      break;
    case ExprKind::Renamed:
      hashCombine(seed, n.in.hash());
      hashCombine(seed, static_cast<std::size_t>(n.cong.kind));
      for (auto v : n.cong.permutation) hashCombine(seed, v);
      for (auto v : n.cong.groups) hashCombine(seed, v);
      for (const auto& [a, b] : n.cong.relabel) {
        hashCombine(seed, hashNat(a));
        hashCombine(seed, hashNat(b));
      }
      break;
    case ExprKind::FinPowerset:
      hashCombine(seed, n.in.hash());
      break;
    case ExprKind::Witness:
      hashCombine(seed, std::hash<const void*>{}(n.wit.get()));
      break;
  }
  return seed;
}

ArityProfile unionProfiles(const ArityProfile& a, const ArityProfile& b) {
  ArityProfile out;
  if (a.unbounded || b.unbounded) {
    out.unbounded = true;
    return out;
  }
  std::set_union(a.list.begin(), a.list.end(), b.list.begin(), b.list.end(),
                 std::back_inserter(out.list));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Accessors

ExprKind SetExpr::kind() const { return node_->kind; }
const std::vector<Point>& SetExpr::points() const { return node_->pts; }
const PeriodicSet& SetExpr::periodic() const { return node_->per; }
const SetExpr& SetExpr::left() const { return node_->l; }
const SetExpr& SetExpr::right() const { return node_->r; }
const SetExpr& SetExpr::inner() const { return node_->in; }
const CongruenceSpec& SetExpr::congruence() const { return node_->cong; }
const std::shared_ptr<WitnessSchedule>& SetExpr::witnessSchedule() const {
  return node_->wit;
}
const SetExpr::ProgressionParams& SetExpr::progressionParams() const {
  return node_->prog;
}
ArityProfile SetExpr::arities() const { return node_->arity; }
std::size_t SetExpr::hash() const { return node_->hashv; }

bool SetExpr::structurallyEqual(const SetExpr& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  const Node& a = *node_;
  const Node& b = *other.node_;
  if (a.kind != b.kind || a.hashv != b.hashv) return false;
  switch (a.kind) {
    case ExprKind::Empty: return true;
    case ExprKind::Finite: return a.pts == b.pts;
    case ExprKind::Progression: return a.per == b.per;
    case ExprKind::Union:
    case ExprKind::Intersect:
    case ExprKind::Difference:
    case ExprKind::Product:
      return a.l.structurallyEqual(b.l) && a.r.structurallyEqual(b.r);
    case ExprKind::Renamed:
      return a.cong == b.cong && a.in.structurallyEqual(b.in);
    case ExprKind::FinPowerset:
      return a.in.structurallyEqual(b.in);
    case ExprKind::Witness:
      return a.wit == b.wit;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Builders

SetExpr makeEmpty() {
  auto n = std::make_shared<SetExpr::Node>();
  n->kind = ExprKind::Empty;
  n->hashv = computeHash(*n);
  return SetExpr(std::move(n));
}

SetExpr makeFinite(std::vector<Point> pts) {
  for (const auto& p : pts)
    if (p.empty())
      throw EngineError(ErrorCode::MalformedAtom,
                        "finite atoms may not contain the empty tuple");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto n = std::make_shared<SetExpr::Node>();
  n->kind = ExprKind::Finite;
  n->pts = std::move(pts);
  std::set<std::size_t> ar;
  for (const auto& p : n->pts) ar.insert(p.size());
  n->arity.list.assign(ar.begin(), ar.end());
  n->hashv = computeHash(*n);
  return SetExpr(std::move(n));
}

SetExpr makeProgression(std::uint64_t m, std::uint64_t r, Label start,
                        std::vector<Label> plus, std::vector<Label> minus) {
  auto n = std::make_shared<SetExpr::Node>();
  n->kind = ExprKind::Progression;
  n->per = PeriodicSet::progression(m, r, start, plus, minus);
  n->prog = {m, r, start, std::move(plus), std::move(minus)};
  n->arity.list = {1};
  n->hashv = computeHash(*n);
  return SetExpr(std::move(n));
}

namespace {
SetExpr makeBinary(ExprKind kind, SetExpr l, SetExpr r, ArityProfile arity) {
  auto n = std::make_shared<SetExpr::Node>();
  n->kind = kind;
  n->l = std::move(l);
  n->r = std::move(r);
  n->arity = std::move(arity);
  n->hashv = computeHash(*n);
  return SetExpr(std::move(n));
}
}  // namespace

SetExpr makeUnion(SetExpr l, SetExpr r) {
  if (l.kind() == ExprKind::Empty) return r;
  if (r.kind() == ExprKind::Empty) return l;
  return makeBinary(ExprKind::Union, l, r, unionProfiles(l.arities(), r.arities()));
}

SetExpr makeIntersect(SetExpr l, SetExpr r) {
  if (l.kind() == ExprKind::Empty || r.kind() == ExprKind::Empty) return makeEmpty();
  ArityProfile la = l.arities(), ra = r.arities();
  if (la.disjointFrom(ra)) return makeEmpty();  // cross-arity sets are disjoint
  ArityProfile out;
  if (la.unbounded && ra.unbounded)
    out.unbounded = true;
  else if (la.unbounded)
    out.list = ra.list;
  else if (ra.unbounded)
    out.list = la.list;
  else
    std::set_intersection(la.list.begin(), la.list.end(), ra.list.begin(),
                          ra.list.end(), std::back_inserter(out.list));
  return makeBinary(ExprKind::Intersect, l, r, std::move(out));
}

SetExpr makeDifference(SetExpr l, SetExpr r) {
  if (l.kind() == ExprKind::Empty) return makeEmpty();
  if (r.kind() == ExprKind::Empty) return l;
  return makeBinary(ExprKind::Difference, l, r, l.arities());
}

SetExpr makeProduct(SetExpr l, SetExpr r) {
  if (l.kind() == ExprKind::Empty || r.kind() == ExprKind::Empty) return makeEmpty();
  ArityProfile la = l.arities(), ra = r.arities();
  if (la.containsZero() || ra.containsZero())
    throw EngineError(ErrorCode::ArityMismatch,
                      "product operands must have positive, bounded arity");
  ArityProfile out;
  std::set<std::size_t> sums;
  for (std::size_t p : la.list)
    for (std::size_t q : ra.list) sums.insert(p + q);
  out.list.assign(sums.begin(), sums.end());
  return makeBinary(ExprKind::Product, l, r, std::move(out));
}

SetExpr makeRenamed(CongruenceSpec tau, SetExpr a) {
  ArityProfile ap = a.arities();
  switch (tau.kind) {
    case CongruenceSpec::Kind::ComponentPermutation:
      if (ap.unbounded ||
          std::any_of(ap.list.begin(), ap.list.end(),
                      [&](std::size_t k) { return k != tau.permutation.size(); }))
        throw EngineError(ErrorCode::ArityMismatch,
                          "permutation arity does not match expression");
      break;
    case CongruenceSpec::Kind::Regroup: {
      std::size_t total = 0;
      for (std::size_t b : tau.groups) total += b;
      if (ap.unbounded ||
          std::any_of(ap.list.begin(), ap.list.end(),
                      [&](std::size_t k) { return k != total; }))
        throw EngineError(ErrorCode::ArityMismatch,
                          "regroup blocks do not cover the expression arity");
      break;
    }
    case CongruenceSpec::Kind::FiniteRelabel:
      break;  // applicable to any arity
  }
  auto n = std::make_shared<SetExpr::Node>();
  n->kind = ExprKind::Renamed;
  n->in = std::move(a);
  n->cong = std::move(tau);
  n->arity = ap;
  n->hashv = computeHash(*n);
  return SetExpr(std::move(n));
}

SetExpr makeFinPowerset(SetExpr x) {
  ArityProfile ap = x.arities();
  if (ap.unbounded ||
      std::any_of(ap.list.begin(), ap.list.end(),
                  [](std::size_t k) { return k != 1; }))
    throw EngineError(ErrorCode::ArityMismatch,
                      "finite powerset requires an arity-1 expression");
  auto n = std::make_shared<SetExpr::Node>();
  n->kind = ExprKind::FinPowerset;
  n->in = std::move(x);
  if (n->in.kind() == ExprKind::Finite || n->in.kind() == ExprKind::Empty) {
    std::set<Point> uniq;
    if (n->in.kind() == ExprKind::Finite)
      uniq.insert(n->in.points().begin(), n->in.points().end());
    for (std::size_t k = 0; k <= uniq.size(); ++k) n->arity.list.push_back(k);
  } else {
    n->arity.unbounded = true;
  }
  n->hashv = computeHash(*n);
  return SetExpr(std::move(n));
}

SetExpr makeWitnessExpr(std::shared_ptr<WitnessSchedule> schedule) {
  auto n = std::make_shared<SetExpr::Node>();
  n->kind = ExprKind::Witness;
  n->arity.list = {schedule->arity()};
  n->wit = std::move(schedule);
  n->hashv = computeHash(*n);
  return SetExpr(std::move(n));
}

SetExpr combine(SetOp op, SetExpr l, SetExpr r) {
  switch (op) {
    case SetOp::Union: return makeUnion(std::move(l), std::move(r));
    case SetOp::Intersect: return makeIntersect(std::move(l), std::move(r));
    case SetOp::Difference: return makeDifference(std::move(l), std::move(r));
    case SetOp::Product: return makeProduct(std::move(l), std::move(r));
  }
  throw EngineError(ErrorCode::UnsupportedExpression, "unknown operation");
}

// ---------------------------------------------------------------------------
// Membership

bool contains(const SetExpr& a, const Point& p) {
  switch (a.kind()) {
    case ExprKind::Empty:
      return false;
    case ExprKind::Finite:
      return std::binary_search(a.points().begin(), a.points().end(), p);
    case ExprKind::Progression:
      return p.size() == 1 && a.periodic().contains(p[0]);
    case ExprKind::Union:
      return contains(a.left(), p) || contains(a.right(), p);
    case ExprKind::Intersect:
      return contains(a.left(), p) && contains(a.right(), p);
    case ExprKind::Difference:
      return contains(a.left(), p) && !contains(a.right(), p);
    case ExprKind::Product: {
      ArityProfile la = a.left().arities(), ra = a.right().arities();
      for (std::size_t k = 1; k < p.size(); ++k) {
        if (!la.admits(k) || !ra.admits(p.size() - k)) continue;
        Point lp(p.begin(), p.begin() + k), rp(p.begin() + k, p.end());
        if (contains(a.left(), lp) && contains(a.right(), rp)) return true;
      }
      return false;
    }
    case ExprKind::Renamed:
      return contains(a.inner(), a.congruence().applyInverse(p));
    case ExprKind::FinPowerset: {
      if (!std::is_sorted(p.begin(), p.end()) ||
          std::adjacent_find(p.begin(), p.end()) != p.end())
        return false;
      for (const auto& x : p)
        if (!contains(a.inner(), Point{x})) return false;
      return true;
    }
    case ExprKind::Witness:
      return a.witnessSchedule()->containsPoint(p);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Local enumeration

std::vector<Point> membersWithin(const SetExpr& a, const Index& i, std::size_t cap) {
  auto guard = [&](std::size_t n) {
    if (n > cap)
      throw EngineError(ErrorCode::BudgetExceeded,
                        "local restriction exceeds enumeration cap");
  };
  switch (a.kind()) {
    case ExprKind::Empty:
      return {};
    case ExprKind::Finite: {
      std::vector<Point> out;
      for (const auto& p : a.points())
        if (i.containsAll(supportOf(p))) out.push_back(p);
      return out;
    }
    case ExprKind::Progression: {
      std::vector<Point> out;
      for (const Label& x : i)
        if (a.periodic().contains(x)) out.push_back(Point{x});
      return out;
    }
    case ExprKind::Union: {
      std::vector<Point> out = membersWithin(a.left(), i, cap);
      std::vector<Point> rhs = membersWithin(a.right(), i, cap);
      out.insert(out.end(), rhs.begin(), rhs.end());
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      guard(out.size());
      return out;
    }
    case ExprKind::Intersect: {
      std::vector<Point> out;
      for (auto& p : membersWithin(a.left(), i, cap))
        if (contains(a.right(), p)) out.push_back(std::move(p));
      return out;
    }
    case ExprKind::Difference: {
      std::vector<Point> out;
      for (auto& p : membersWithin(a.left(), i, cap))
        if (!contains(a.right(), p)) out.push_back(std::move(p));
      return out;
    }
    case ExprKind::Product: {
      std::vector<Point> ls = membersWithin(a.left(), i, cap);
      std::vector<Point> rs = membersWithin(a.right(), i, cap);
      guard(ls.size() * rs.size());
      std::vector<Point> out;
      out.reserve(ls.size() * rs.size());
      for (const auto& lp : ls)
        for (const auto& rp : rs) {
          Point p = lp;
          p.insert(p.end(), rp.begin(), rp.end());
          out.push_back(std::move(p));
        }
      std::sort(out.begin(), out.end());
      return out;
    }
    case ExprKind::Renamed: {
      const CongruenceSpec& tau = a.congruence();
      Index window = i;
      if (tau.kind == CongruenceSpec::Kind::FiniteRelabel)
        window = i.unionWith(tau.relabelBlock());
      std::vector<Point> out;
      for (const auto& p : membersWithin(a.inner(), window, cap)) {
        Point q = tau.apply(p);
        if (i.containsAll(supportOf(q))) out.push_back(std::move(q));
      }
      std::sort(out.begin(), out.end());
      guard(out.size());
      return out;
    }
    case ExprKind::FinPowerset: {
      std::vector<Point> base = membersWithin(a.inner(), i, cap);
      if (base.size() >= 63 || (std::size_t(1) << base.size()) > cap)
        throw EngineError(ErrorCode::BudgetExceeded,
                          "finite powerset restriction too large to enumerate");
      std::vector<Point> out;
      out.reserve(std::size_t(1) << base.size());
      for (std::size_t mask = 0; mask < (std::size_t(1) << base.size()); ++mask) {
        Point subset;
        for (std::size_t k = 0; k < base.size(); ++k)
          if (mask & (std::size_t(1) << k)) subset.push_back(base[k][0]);
        out.push_back(std::move(subset));  // base sorted => subset increasing
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    case ExprKind::Witness:
      return a.witnessSchedule()->membersWithin(i);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Misc

namespace {
void collectEditLabels(const SetExpr& a, std::vector<Label>& out) {
  switch (a.kind()) {
    case ExprKind::Empty:
      return;
    case ExprKind::Finite:
      for (const auto& p : a.points())
        for (const auto& x : p) out.push_back(x);
      return;
    case ExprKind::Progression: {
      const auto& e = a.periodic().edits();
      out.insert(out.end(), e.begin(), e.end());
      return;
    }
    case ExprKind::Union:
    case ExprKind::Intersect:
    case ExprKind::Difference:
    case ExprKind::Product:
      collectEditLabels(a.left(), out);
      collectEditLabels(a.right(), out);
      return;
    case ExprKind::Renamed: {
      if (a.congruence().kind == CongruenceSpec::Kind::FiniteRelabel)
        for (const auto& x : a.congruence().relabelBlock()) out.push_back(x);
      collectEditLabels(a.inner(), out);
      return;
    }
    case ExprKind::FinPowerset:
      collectEditLabels(a.inner(), out);
      return;
    case ExprKind::Witness:
      return;
  }
}
}  // namespace

std::vector<Label> SetExpr::atomEditLabels() const {
  std::vector<Label> out;
  collectEditLabels(*this, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string SetExpr::str() const {
  switch (kind()) {
    case ExprKind::Empty:
      return "{}";
    case ExprKind::Finite: {
      std::string s = "{";
      for (std::size_t k = 0; k < points().size(); ++k) {
        if (k) s += ",";
        s += pointStr(points()[k]);
      }
      return s + "}";
    }
    case ExprKind::Progression: {
      const auto& p = progressionParams();
      std::string s = "prog(" + std::to_string(p.modulus) + "," +
                      std::to_string(p.residue);
      if (p.start != 0) s += ",start=" + p.start.str();
      if (!p.plus.empty()) {
        s += ",plus={";
        for (std::size_t k = 0; k < p.plus.size(); ++k)
          s += (k ? "," : "") + p.plus[k].str();
        s += "}";
      }
      if (!p.minus.empty()) {
        s += ",minus={";
        for (std::size_t k = 0; k < p.minus.size(); ++k)
          s += (k ? "," : "") + p.minus[k].str();
        s += "}";
      }
      return s + ")";
    }
    case ExprKind::Union:
      return "(" + left().str() + " | " + right().str() + ")";
    case ExprKind::Intersect:
      return "(" + left().str() + " & " + right().str() + ")";
    case ExprKind::Difference:
      return "(" + left().str() + " \\ " + right().str() + ")";
    case ExprKind::Product:
      return "(" + left().str() + " x " + right().str() + ")";
    case ExprKind::Renamed:
      return "rename(" + congruence().str() + "," + inner().str() + ")";
    case ExprKind::FinPowerset:
      return "powfin(" + inner().str() + ")";
    case ExprKind::Witness:
      return witnessSchedule()->label();
  }
  return "?";
}

}  // namespace numeros
