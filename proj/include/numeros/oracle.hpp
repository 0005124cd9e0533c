#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "numeros/census.hpp"
#include "numeros/nat.hpp"
#include "numeros/point.hpp"
#include "numeros/setexpr.hpp"

namespace numeros {

enum class Ordering { Less, Equal, Greater };

inline const char* orderingName(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
  }
  return "?";
}

struct CompareResult {
  Ordering ordering;
  // Chain stage from which the census comparison keeps the reported sign.
  std::size_t evidenceStage;
};

// One entry of the replayable commitment log.  The generic chain is grown one
// decision at a time; every later answer must stay consistent with the log.
struct Commitment {
  enum class Kind { Cone, SignDecision, Monotone, StrictDominance };

  Kind kind;
  std::size_t stage = 0;  // chain length when the commitment was made

  Index cone;             // Cone: labels now present in every chain index
  SetExpr a, b;           // the compared pair (other kinds)
  Ordering sign = Ordering::Equal;  // SignDecision
  std::uint64_t residue = 0;        // SignDecision: committed stage-size class
  std::uint64_t period = 1;
  std::size_t fromStage = 0;  // stage from which the property is enforced

  std::string str() const;
};

struct OracleConfig {
  enum class ResiduePreference { Lowest, Highest };
  ResiduePreference residuePreference = ResiduePreference::Lowest;
  // Stage budget for direct evaluation when no closed form exists.
  std::size_t budget = 48;
  // Extra stages a subtraction witness is verified along past its commitment.
  std::size_t chainStages = 50;
  // Ground-set cap for partition scans (search is exponential in it).
  std::size_t partitionGroundCap = 20;
  // Hard cap on how far the canonical chain may be materialized.
  std::size_t maxChainLength = 100000;
  // Re-verify the whole commitment log as the chain grows.
  bool verifyCommitments = true;
};

struct PartitionScanReport {
  // Longest strict-descent chain of ψ values over the subset lattice.
  std::size_t maxZeroChainLength = 0;
  std::vector<Index> longestZeroChain;
  // Most descent steps along any single maximal (covering) chain.
  std::size_t maxDescentsOnMaximalChain = 0;
  bool wellFounded = true;
  // A covering chain to the top along which ψ never descends, when one exists.
  std::optional<std::vector<Index>> homogeneousCofinal;
};

// Deterministic surrogate for a fine ultrafilter on the finite indices: a
// strictly increasing chain of indices i_0 ⊂ i_1 ⊂ ..., grown lazily, with
// every choice recorded as a commitment.  Chain index k is [0, c_k) ∪ forced,
// where the sizes c_k run through a committed residue class and `forced`
// collects all labels promised to lie in every sufficiently late index.
class OracleState {
 public:
  explicit OracleState(OracleConfig config = {});

  const OracleConfig& config() const { return config_; }

  // Promise that every later chain index contains d (idempotent).
  void ensureCone(const Index& d);

  const Index& chainAt(std::size_t k);
  std::size_t chainLength() const { return sizes_.size(); }
  const Label& chainSizeAt(std::size_t k);
  const Index& forced() const { return forced_; }

  std::uint64_t classResidue() const { return classResidue_; }
  std::uint64_t classPeriod() const { return classPeriod_; }

  // Eventual comparison of |A_i| vs |B_i| along the chain; commits the
  // deciding residue class (and the needed cones) on first use, then stays
  // consistent forever.  Memoized per structural pair.
  CompareResult compare(const SetExpr& a, const SetExpr& b);

  // Record |A_i| < |B_i| from the current stage on; throws NotDominated when
  // censuses refute it on the current chain.
  void commitStrictDominance(const SetExpr& a, const SetExpr& b);

  // Exhaustive scan of ψ : P([0,k)) -> N given as a table indexed by bitmask.
  PartitionScanReport partitionScan(const std::vector<Nat>& psiTable,
                                    std::size_t groundSize, std::size_t maxChain);

  const std::vector<Commitment>& commitments() const { return log_; }
  std::string dumpCommitments() const;

  // Fresh label from the reserved band (deterministic counter).
  Label freshUnitLabel();

  // Pull every edit label of `a` too large for chain materialization into the
  // forced cone, so the remaining breakpoints stay small.
  void prepare(const SetExpr& a);

 private:
  void materializeTo(std::size_t k);
  void appendStage();
  void refineClass(std::uint64_t residue, std::uint64_t period);
  void verifyNewStage(std::size_t k);
  CompareResult compareClosed(const SetExpr& a, const SetExpr& b);
  CompareResult compareFallback(const SetExpr& a, const SetExpr& b);
  std::size_t stageWithSizeAtLeast(const Label& n);

  OracleConfig config_;
  Index forced_;
  std::uint64_t classResidue_ = 0;
  std::uint64_t classPeriod_ = 1;
  std::vector<Label> sizes_;   // c_k for materialized stages
  std::vector<Index> chain_;   // [0, c_k) ∪ forced
  std::vector<Commitment> log_;
  // Per-commitment minimal canonical size from which it is enforced;
  // recomputed when new cones change the censuses.
  std::vector<Label> minSize_;
  std::vector<std::tuple<SetExpr, SetExpr, CompareResult>> compareMemo_;
  Label nextUnit_;
  bool verifying_ = false;
};

}  // namespace numeros
