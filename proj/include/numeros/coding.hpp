#pragma once

#include <string>
#include <vector>

#include "numeros/nat.hpp"
#include "numeros/point.hpp"
#include "numeros/setexpr.hpp"

namespace numeros {

// A hereditarily finite set, canonicalized: members sorted by code and
// duplicate-free.  Equality and ordering go through the (injective) code.
class HFSet {
 public:
  HFSet() = default;  // empty set
  explicit HFSet(std::vector<HFSet> members);

  const std::vector<HFSet>& members() const { return members_; }
  const Nat& code() const { return code_; }
  std::size_t rank() const;

  static HFSet decode(const Nat& n);
  // Braces syntax, e.g. "{{},{{}}}".
  static HFSet parse(const std::string& text);
  std::string str() const;

  bool operator==(const HFSet& other) const { return code_ == other.code_; }
  bool operator<(const HFSet& other) const { return code_ < other.code_; }

 private:
  std::vector<HFSet> members_;
  Nat code_;
};

inline Nat ackermannCode(const HFSet& x) { return x.code(); }
inline HFSet ackermannDecode(const Nat& n) { return HFSet::decode(n); }

// A_X = {γ_x : x ∈ X} as an arity-1 finite expression.
SetExpr codeSet(const std::vector<HFSet>& X);

// A_X * A_Y = A_{{{x,y} : x∈X, y∈Y}} with degenerate {x,x} = {x}.
struct DoubletonProduct {
  SetExpr expr;
  std::size_t pairsConsidered = 0;
  std::size_t distinctCodes = 0;
  std::size_t degeneratePairs = 0;  // x = y collapses {x,y} to {x}
};
DoubletonProduct doubletonProduct(const std::vector<HFSet>& X,
                                  const std::vector<HFSet>& Y);

// Codes of all members of X, Y and of every doubleton {x,y}: the census
// multiplicativity identity for the doubleton product holds on such indices.
Index pairClosedIndex(const std::vector<HFSet>& X, const std::vector<HFSet>& Y);

}  // namespace numeros
