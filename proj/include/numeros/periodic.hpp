#pragma once

#include <optional>
#include <string>
#include <vector>

#include "numeros/nat.hpp"
#include "numeros/point.hpp"

namespace numeros {

// An eventually periodic subset of N: a union of residue classes modulo m,
// finitely edited.  Membership is  base(x) XOR (x in edits)  where
// base(x) = (x mod m) in residues.  This family is closed under the boolean
// operations (residues combine pointwise on lcm of the moduli, edits stay
// finite), which is what keeps every census exactly computable.
class PeriodicSet {
 public:
  PeriodicSet() : modulus_(1), residues_{false} {}

  static PeriodicSet none() { return PeriodicSet(); }
  static PeriodicSet all() {
    PeriodicSet s;
    s.residues_ = {true};
    return s;
  }
  static PeriodicSet singleton(const Label& x) {
    PeriodicSet s;
    s.edits_ = {x};
    return s;
  }
  static PeriodicSet finite(std::vector<Label> xs);
  // {x : x >= start, x = r (mod m)}  with finite additions / removals.
  static PeriodicSet progression(std::uint64_t m, std::uint64_t r, const Label& start,
                                 const std::vector<Label>& plus,
                                 const std::vector<Label>& minus);

  bool contains(const Label& x) const;

  PeriodicSet complement() const;
  PeriodicSet intersect(const PeriodicSet& other) const;
  PeriodicSet unite(const PeriodicSet& other) const;
  PeriodicSet subtract(const PeriodicSet& other) const;

  // Finite injective relabelling whose domain equals its range as a set.
  // pairs maps old -> new.
  PeriodicSet relabel(const std::vector<std::pair<Label, Label>>& pairs) const;

  bool isEmpty() const;
  bool isFinite() const;       // no residue class survives
  std::uint64_t modulus() const { return modulus_; }
  const std::vector<Label>& edits() const { return edits_; }
  std::size_t residueCount() const;

  // |S ∩ [0,n)|.
  Nat countBelow(const Label& n) const;
  // |S ∩ i| for an explicit index.
  Nat countIn(const Index& i) const;
  // All members below n (n expected modest).
  std::vector<Label> elementsBelow(const Label& n) const;

  bool operator==(const PeriodicSet&) const = default;

  std::size_t hash() const {
    std::size_t seed = modulus_;
    for (bool b : residues_) hashCombine(seed, b ? 0x9e37u : 0x79b9u);
    for (const auto& e : edits_) hashCombine(seed, hashNat(e));
    return seed;
  }

  std::string str() const;

 private:
  void canonicalize();
  bool base(const Label& x) const;
  bool hasEdit(const Label& x) const;

  std::uint64_t modulus_;
  std::vector<bool> residues_;  // size modulus_
  std::vector<Label> edits_;    // sorted, unique; symmetric-difference set
};

}  // namespace numeros
