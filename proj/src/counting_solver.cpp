#include "numeros/counting_solver.hpp"

#include <algorithm>

#include "numeros/errors.hpp"

namespace numeros {

CountingSolution solveCounting(const std::vector<Label>& ground,
                               const std::vector<long long>& target) {
  const std::size_t k = ground.size();
  if (k == 0 || k > 16)
    throw EngineError(ErrorCode::BudgetExceeded,
                      "counting solver ground set out of range");
  const std::size_t full = std::size_t(1) << k;
  if (target.size() != full)
    throw EngineError(ErrorCode::MalformedAtom,
                      "target must have one entry per subset");

  std::vector<Label> sorted = ground;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() != k)
    throw EngineError(ErrorCode::MalformedAtom, "ground labels must be distinct");

  CountingSolution sol;
  std::vector<std::size_t> aMasks, bMasks;
  // Unlimited supply of points with support exactly m: the sorted labels of
  // m with the least label repeated t extra times, t = 0,1,2,...
  std::vector<std::size_t> supply(full, 0);
  auto makePoint = [&](std::size_t m) {
    Point p;
    std::vector<Label> labels;
    for (std::size_t b = 0; b < k; ++b)
      if (m & (std::size_t(1) << b)) labels.push_back(sorted[b]);
    for (std::size_t t = 0; t < supply[m]; ++t) p.push_back(labels[0]);
    for (const Label& x : labels) p.push_back(x);
    ++supply[m];
    return p;
  };
  auto countWithin = [&](const std::vector<std::size_t>& masks, std::size_t m) {
    long long c = 0;
    for (std::size_t pm : masks)
      if ((pm & ~m) == 0) ++c;
    return c;
  };

  // Subset-last order: i precedes j iff max(i Δ j) ∈ j, which over a sorted
  // ground set is exactly the numeric bitmask order.
  for (std::size_t m = 1; m < full; ++m) {
    long long have = countWithin(aMasks, m) - countWithin(bMasks, m);
    long long need = target[m] - have;
    for (; need > 0; --need) {
      sol.aPoints.push_back(makePoint(m));
      aMasks.push_back(m);
    }
    for (; need < 0; ++need) {
      sol.bPoints.push_back(makePoint(m));
      bMasks.push_back(m);
    }
  }
  sol.a = sol.aPoints.empty() ? makeEmpty() : makeFinite(sol.aPoints);
  sol.b = sol.bPoints.empty() ? makeEmpty() : makeFinite(sol.bPoints);
  return sol;
}

}  // namespace numeros
