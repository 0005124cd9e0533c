#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "numeros/nat.hpp"
#include "numeros/periodic.hpp"
#include "numeros/point.hpp"

namespace numeros {

class WitnessSchedule;

enum class ExprKind {
  Empty,
  Finite,
  Progression,
  Union,
  Intersect,
  Difference,
  Product,
  Renamed,
  FinPowerset,
  Witness,
};

// A support-preserving transformation of tuples, the admissible "exact
// applications" of the comparison theory.
struct CongruenceSpec {
  enum class Kind { ComponentPermutation, Regroup, FiniteRelabel };
  Kind kind = Kind::ComponentPermutation;
  // ComponentPermutation: tau(a)_j = a_{perm[j]}.
  std::vector<std::size_t> permutation;
  // Regroup: block sizes of a reparenthesization; identity on flat tuples.
  std::vector<std::size_t> groups;
  // FiniteRelabel: injective label map whose domain equals its range as a
  // set, so every index containing the block is fixed setwise.
  std::vector<std::pair<Label, Label>> relabel;

  static CongruenceSpec componentPermutation(std::vector<std::size_t> perm);
  static CongruenceSpec regroup(std::vector<std::size_t> blockSizes);
  static CongruenceSpec finiteRelabel(std::vector<std::pair<Label, Label>> map);

  Index relabelBlock() const;  // labels touched by a FiniteRelabel
  Point apply(const Point& p) const;
  Point applyInverse(const Point& p) const;

  bool operator==(const CongruenceSpec&) const = default;
  std::string str() const;
};

// Which tuple lengths an expression can produce.  `unbounded` is set for
// finite powersets of infinite sets.
struct ArityProfile {
  bool unbounded = false;
  std::vector<std::size_t> list;  // sorted; meaningful when !unbounded

  bool admits(std::size_t n) const;
  bool disjointFrom(const ArityProfile& other) const;
  std::size_t maxArity() const;  // throws if unbounded
  bool containsZero() const;
};

// Immutable symbolic finitary point set over the line L = N.
class SetExpr {
 public:
  SetExpr() = default;  // empty handle; use the builders below

  ExprKind kind() const;
  bool valid() const { return node_ != nullptr; }

  const std::vector<Point>& points() const;          // Finite
  const PeriodicSet& periodic() const;               // Progression
  const SetExpr& left() const;                       // binary nodes
  const SetExpr& right() const;
  const SetExpr& inner() const;                      // Renamed / FinPowerset
  const CongruenceSpec& congruence() const;          // Renamed
  const std::shared_ptr<WitnessSchedule>& witnessSchedule() const;

  // Original progression parameters, kept for printing.
  struct ProgressionParams {
    std::uint64_t modulus = 1;
    std::uint64_t residue = 0;
    Label start;
    std::vector<Label> plus, minus;
  };
  const ProgressionParams& progressionParams() const;

  ArityProfile arities() const;
  std::size_t hash() const;
  bool structurallyEqual(const SetExpr& other) const;
  std::string str() const;

  // All finite edit / exceptional labels occurring in atoms (used by the
  // oracle to decide which labels must be forced into the chain).
  std::vector<Label> atomEditLabels() const;

  // Implementation node; defined in setexpr.cpp only.
  struct Node;
  explicit SetExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

 private:
  std::shared_ptr<const Node> node_;

  friend SetExpr makeEmpty();
  friend SetExpr makeFinite(std::vector<Point> pts);
  friend SetExpr makeProgression(std::uint64_t m, std::uint64_t r, Label start,
                                 std::vector<Label> plus, std::vector<Label> minus);
  friend SetExpr makeUnion(SetExpr l, SetExpr r);
  friend SetExpr makeIntersect(SetExpr l, SetExpr r);
  friend SetExpr makeDifference(SetExpr l, SetExpr r);
  friend SetExpr makeProduct(SetExpr l, SetExpr r);
  friend SetExpr makeRenamed(CongruenceSpec tau, SetExpr a);
  friend SetExpr makeFinPowerset(SetExpr x);
  friend SetExpr makeWitnessExpr(std::shared_ptr<WitnessSchedule> schedule);
};

SetExpr makeEmpty();
SetExpr makeFinite(std::vector<Point> pts);
SetExpr makeProgression(std::uint64_t m, std::uint64_t r, Label start = 0,
                        std::vector<Label> plus = {},
                        std::vector<Label> minus = {});
SetExpr makeUnion(SetExpr l, SetExpr r);
SetExpr makeIntersect(SetExpr l, SetExpr r);
SetExpr makeDifference(SetExpr l, SetExpr r);
SetExpr makeProduct(SetExpr l, SetExpr r);
SetExpr makeRenamed(CongruenceSpec tau, SetExpr a);
SetExpr makeFinPowerset(SetExpr x);
SetExpr makeWitnessExpr(std::shared_ptr<WitnessSchedule> schedule);

enum class SetOp { Union, Intersect, Difference, Product };
SetExpr combine(SetOp op, SetExpr l, SetExpr r);

// Membership in the denotation; total and terminating for every variant.
bool contains(const SetExpr& a, const Point& p);

// All points of the denotation with support inside `i`, sorted.  Throws
// BudgetExceeded when the restriction exceeds `cap` points (finite powersets
// of large local restrictions).
std::vector<Point> membersWithin(const SetExpr& a, const Index& i,
                                 std::size_t cap = std::size_t(1) << 20);

struct SetExprHash {
  std::size_t operator()(const SetExpr& e) const { return e.hash(); }
};
struct SetExprEq {
  bool operator()(const SetExpr& a, const SetExpr& b) const {
    return a.structurallyEqual(b);
  }
};

}  // namespace numeros
