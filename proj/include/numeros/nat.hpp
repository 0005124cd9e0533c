#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>

namespace numeros {

// Exact arithmetic throughout: labels on the line are unbounded naturals
// (Ackermann codes overflow machine words quickly) and census values grow
// like 2^n for finite-powerset expressions.
using Nat = boost::multiprecision::cpp_int;
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// A point component / element of the line L = N.
using Label = Nat;

// Labels at or above this value are reserved for engine-generated material
// (unit singletons used to disjointify sums). User scripts should stay below.
inline const Label kReservedBand = Label(1) << 32;

inline std::size_t hashNat(const Nat& n) { return hash_value(n); }

inline void hashCombine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace numeros
