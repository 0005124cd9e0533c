#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "numeros/nat.hpp"
#include "numeros/point.hpp"
#include "numeros/setexpr.hpp"

namespace numeros {

class OracleState;

// A constructive difference set for a committed strict comparison A < B: a
// deterministic schedule that enters, at every chain stage past the
// commitment, exactly enough fresh points (disjoint from A and B, each with a
// component among the stage's new labels) to keep
//   |C_{i_k}| = |B_{i_k}| - |A_{i_k}|
// along the whole chain.  Stages are materialized lazily; the backing oracle
// must outlive the schedule.
class WitnessSchedule {
 public:
  struct Batch {
    std::size_t stage;
    std::vector<Point> points;
  };

  std::size_t arity() const { return arity_; }
  const SetExpr& smaller() const { return a_; }
  const SetExpr& larger() const { return b_; }
  std::size_t commitStage() const { return startStage_; }
  const std::string& label() const { return label_; }

  // Materialize every batch entering at chain stage <= k.
  void ensureStage(std::size_t k);
  const std::vector<Batch>& batches() const { return batches_; }

  bool containsPoint(const Point& p);
  std::vector<Point> membersWithin(const Index& i);
  Nat countWithin(const Index& i);

  // One line per materialized stage: "stage k: +d points: (..),(..)".
  std::string exportText();

 private:
  friend std::shared_ptr<WitnessSchedule> buildWitnessSchedule(OracleState& oracle,
                                                               SetExpr a, SetExpr b);
  WitnessSchedule() = default;

  bool tryExtend(std::size_t k);  // false: not enough fresh points at stage k
  void requireStagesFor(const Index& i);

  OracleState* oracle_ = nullptr;
  SetExpr a_, b_;
  std::size_t arity_ = 1;
  std::size_t startStage_ = 1;   // first stage that receives a batch
  std::size_t nextStage_ = 1;    // first stage not yet materialized
  Nat cumulative_ = 0;           // points entered so far
  std::vector<Batch> batches_;
  std::set<Point> pointSet_;
  std::string label_;
};

// Construct and fully verify a schedule for A < B (the comparison is made /
// checked first).  Throws NotLess when the oracle does not report A < B, and
// CapacityExceeded when no admissible arity can supply the needed points.
std::shared_ptr<WitnessSchedule> buildWitnessSchedule(OracleState& oracle,
                                                      SetExpr a, SetExpr b);

}  // namespace numeros
