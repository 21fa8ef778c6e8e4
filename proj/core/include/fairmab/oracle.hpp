#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fairmab/core.hpp"
#include "fairmab/fairlearn.hpp"

namespace fairmab {

// Debt-interval classification of every arm at one round. Band j in [1, k]
// is M_j (alpha + (k-j)/k <= debt < alpha + (k-j+1)/k, closed on the left),
// band 0 is S (debt < alpha), and kUnclassifiable marks an arm at or above
// alpha + 1, which is a fairness-breach witness rather than an error.
struct PartitionSnapshot {
  static constexpr int kBandS = 0;
  static constexpr int kUnclassifiable = -1;

  std::uint64_t round = 0;
  std::vector<int> band;

  std::vector<std::size_t> s_members() const;
  std::vector<std::size_t> m_members(std::size_t j) const;  // j in [1, k]
  std::vector<std::size_t> unclassifiable() const;
  // |V_j| = number of arms in M_1 .. M_j.
  std::size_t v_size(std::size_t j) const;
};

PartitionSnapshot classify(const BanditState& state, const FairMabInstance& instance);

struct PartitionCheck {
  bool ok = true;
  std::string rule;    // "partition-cover" | "band-cardinality" when failed
  std::string detail;  // witnesses, arms numbered from 1
};

// The two structural conditions on a snapshot: every arm classified, and
// the top-j bands hold at most j arms for every j.
PartitionCheck check_partition(const PartitionSnapshot& snapshot);

struct AuditReport {
  static constexpr std::size_t kNoArm = std::numeric_limits<std::size_t>::max();

  bool passed = true;
  std::uint64_t rounds_checked = 0;
  std::uint64_t fail_round = 0;
  std::size_t fail_arm = kNoArm;
  std::string fail_rule;  // "floor-violation" | "partition-cover" | "band-cardinality" | "transition"
  std::string detail;
};

// Brute-force fairness audit, independent of the engine: replays the raw
// events, recomputes all counts, and at every round checks the integer
// fairness condition, the partition structure, and that each arm's band
// movement is one the theory permits (a pulled arm falls to S or M_k; an
// unpulled arm climbs by at most one band, and from M_1 has nowhere left
// to go). Stops at the first failure. Structural damage to the trace
// (non-contiguous rounds, arms out of range, checkpoints that do not match
// the replay) throws TraceCorrupt instead of failing the audit.
AuditReport audit_trace(const RunTrace& trace, const FairMabInstance& instance);

// One-line human-readable rendering of a report.
std::string format_audit(const AuditReport& report);

}  // namespace fairmab
