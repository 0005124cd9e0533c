#pragma once

#include <optional>
#include <string>
#include <vector>

#include "numeros/nat.hpp"
#include "numeros/oracle.hpp"
#include "numeros/setexpr.hpp"

namespace numeros {

// An element of the ordered semiring of numerosities: an expression together
// with the oracle deciding its equivalence class.  Equality is cmpNum ==
// Equal; no canonical forms are computed.
class Numerosity {
 public:
  Numerosity() = default;
  Numerosity(OracleState* oracle, SetExpr rep)
      : oracle_(oracle), rep_(std::move(rep)) {}

  OracleState* oracle() const { return oracle_; }
  const SetExpr& representative() const { return rep_; }

 private:
  OracleState* oracle_ = nullptr;
  SetExpr rep_;
};

Numerosity num(OracleState& oracle, SetExpr a);
Numerosity addNum(const Numerosity& x, const Numerosity& y);
Numerosity mulNum(const Numerosity& x, const Numerosity& y);
Ordering cmpNum(const Numerosity& x, const Numerosity& y);

// The natural number the value equals, when the census settles to a constant.
std::optional<Nat> toNatural(const Numerosity& x);

// A concrete nonempty difference set for compare(a,b) = Less: disjoint from
// a and b, with censusAt(a,i) + censusAt(C,i) = censusAt(b,i) along the chain
// past its commitment stage.
SetExpr subWitness(OracleState& oracle, SetExpr a, SetExpr b);

// Symbolic disjointness / subset checks on the closed-form fragment (false
// means "not provable here", not a refutation).
bool provablyDisjoint(const SetExpr& a, const SetExpr& b);
bool provablySubset(const SetExpr& a, const SetExpr& b);

enum class AxiomId { E0, E1, E2, E3, E5, AP, PP, UP, CP, WHP, SubP };

const char* axiomName(AxiomId id);
std::optional<AxiomId> axiomFromName(const std::string& name);

struct AxiomReport {
  AxiomId axiom = AxiomId::E0;
  std::size_t total = 0;
  std::size_t checked = 0;      // instances whose preconditions held
  std::size_t vacuous = 0;      // preconditions failed: nothing to check
  std::size_t unsupported = 0;  // outside the decidable fragment
  std::size_t failed = 0;

  struct Failure {
    std::size_t instance;
    std::size_t stage;  // first chain stage witnessing the failure
    std::string detail;
  };
  std::vector<Failure> failures;

  bool pass() const { return failed == 0; }
};

// Evaluate one axiom over explicit instances (tuples of expressions; the
// tuple shape depends on the axiom).
AxiomReport checkAxiom(OracleState& oracle, AxiomId axiom,
                       const std::vector<std::vector<SetExpr>>& instances);

}  // namespace numeros
