#pragma once

#include <cstdint>
#include <vector>

#include "numeros/point.hpp"
#include "numeros/setexpr.hpp"

namespace numeros {

// Constructive solution of a counting target over a tiny line fragment:
// finite A, B with censusAt(A,i) - censusAt(B,i) = target_i for every
// nonempty i ⊆ ground.
struct CountingSolution {
  SetExpr a, b;
  std::vector<Point> aPoints, bPoints;
};

// `target` is indexed by subset bitmask over `ground` (entry 0 ignored) and
// must have size 2^|ground|.  Works inductively along the subset-last order:
// by the time mask m is adjusted, only points of support exactly m are added,
// which leaves every earlier (numerically smaller) mask's census unchanged.
CountingSolution solveCounting(const std::vector<Label>& ground,
                               const std::vector<long long>& target);

}  // namespace numeros
