#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "numeros/nat.hpp"
#include "numeros/periodic.hpp"
#include "numeros/point.hpp"
#include "numeros/setexpr.hpp"

namespace numeros {

// ---------------------------------------------------------------------------
// Exact polynomials with rational coefficients, used as the per-residue-class
// closed form of counting functions along the canonical chain.

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs);  // coeffs[k] * x^k; trailing zeros trimmed

  static Poly interpolate(const std::vector<std::pair<Int, Int>>& samples);

  Rat evalRat(const Rat& x) const;
  Int evalInt(const Int& x) const;  // requires an integral value

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1: zero
  bool isZero() const { return coeffs_.empty(); }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  Rat leading() const { return coeffs_.empty() ? Rat(0) : coeffs_.back(); }

  Poly operator-(const Poly& other) const;
  Poly shifted(const Int& delta) const;  // p(x + delta)

  // Smallest nonnegative integer N such that sign(p(x)) equals the sign of
  // the leading coefficient for every x >= N (0 for the zero polynomial).
  Int signStableBound() const;

  std::string str() const;

 private:
  std::vector<Rat> coeffs_;
};

// ---------------------------------------------------------------------------
// Normal form: a disjoint finite union of rectangular terms, each term a
// product of eventually periodic arity-1 sets.  The arity-0 term denotes the
// singleton {()} (the empty-subset member of finite powersets).

struct Term {
  std::vector<PeriodicSet> factors;
  std::size_t arity() const { return factors.size(); }
  bool isEmpty() const {
    for (const auto& f : factors)
      if (f.isEmpty()) return true;
    return false;
  }
};

struct NormalForm {
  std::vector<Term> terms;  // pairwise disjoint, none empty
  bool isEmpty() const { return terms.empty(); }
  std::size_t maxArity() const {
    std::size_t m = 0;
    for (const auto& t : terms) m = std::max(m, t.arity());
    return m;
  }
};

// Normal form of the closed-form fragment; nullopt when the expression
// contains a witness set or the finite powerset of an infinite set.
std::optional<NormalForm> tryNormalForm(const SetExpr& a);
bool inClosedFragment(const SetExpr& a);

// Is the denotation provably empty / finite (closed-form fragment only)?
bool denotesEmpty(const NormalForm& nf);

// ---------------------------------------------------------------------------
// Counting

// |A_i| = |{a in A : supp(a) ⊆ i}|, computed compositionally and memoized.
Nat censusAt(const SetExpr& a, const Index& i);

// |{a in A : supp(a) = i}| via Moebius inversion over the subset lattice.
Nat exactSupportCount(const SetExpr& a, const Index& i);

// Census at the canonical chain index [0,n) ∪ forced, without materializing
// the index.
Nat censusAtStage(const NormalForm& nf, const Label& n, const Index& forced);
Nat censusAtStage(const SetExpr& a, const Label& n, const Index& forced);

// ---------------------------------------------------------------------------
// Profiles along the canonical chain

// Closed form of n |-> |A_{[0,n) ∪ forced}|: one integer-valued polynomial
// per residue class of n modulo `period`, exact for all n >= validFrom.
class CensusProfile {
 public:
  CensusProfile() = default;
  CensusProfile(std::uint64_t period, Label validFrom, std::vector<Poly> classes,
                Index forced)
      : period_(period),
        validFrom_(std::move(validFrom)),
        classes_(std::move(classes)),
        forced_(std::move(forced)) {}

  std::uint64_t period() const { return period_; }
  const Label& validFrom() const { return validFrom_; }
  const Index& forced() const { return forced_; }
  const Poly& classPoly(std::uint64_t residue) const { return classes_[residue]; }

  Nat eval(const Label& n) const;
  int degree() const;

  // The single constant value the census settles to, if any.
  std::optional<Nat> eventuallyConstant() const;

 private:
  std::uint64_t period_ = 1;
  Label validFrom_;
  std::vector<Poly> classes_;
  Index forced_;
};

// Throws UnsupportedExpression outside the closed-form fragment, or
// BudgetExceeded when the combined progression period is unreasonably large.
CensusProfile censusProfile(const SetExpr& a, const Index& forced);

// Signed closed form of n |-> |B_{i_n}| - |A_{i_n}| along the canonical chain.
class DeltaProfile {
 public:
  DeltaProfile() = default;
  DeltaProfile(std::uint64_t period, Label validFrom, std::vector<Poly> classes)
      : period_(period), validFrom_(std::move(validFrom)), classes_(std::move(classes)) {}

  std::uint64_t period() const { return period_; }
  const Label& validFrom() const { return validFrom_; }
  const Poly& classPoly(std::uint64_t residue) const { return classes_[residue]; }
  Int eval(const Label& n) const;

 private:
  std::uint64_t period_ = 1;
  Label validFrom_;
  std::vector<Poly> classes_;
};

DeltaProfile deltaProfile(const SetExpr& a, const SetExpr& b, const Index& forced);

}  // namespace numeros
