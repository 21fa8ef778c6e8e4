#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fairmab/core.hpp"
#include "fairmab/fairlearn.hpp"

namespace fairmab {

// Deterministic warm-up schedule of the horizon-aware algorithm: each arm is
// owed n_i = max(1, floor(r_i * T)) pulls, played as contiguous blocks in
// arm order; phase_length is the sum of the n_i.
struct QuotaPlan {
  std::vector<std::uint64_t> quotas;
  std::uint64_t phase_length = 0;
};

// The plan for a given instance and horizon. The horizon must leave room
// for the whole warm-up (phase_length <= T always holds for valid quotas
// once T >= k, shorter horizons are rejected).
QuotaPlan quota_plan(const FairMabInstance& instance, std::uint64_t horizon);

// Two-phase run: the warm-up blocks, then plain UCB1 on the accumulated
// counts. Meets every quota by the final round but is deliberately lumpy
// along the way, so the uniform-in-time auditor is expected to reject its
// traces.
RunTrace run_t_fair_ucb(const FairMabInstance& instance, std::uint64_t seed,
                        std::uint64_t horizon,
                        std::span<const std::uint64_t> checkpoint_rounds);
RunTrace run_t_fair_ucb(const FairMabInstance& instance, std::uint64_t seed,
                        std::uint64_t horizon);

// Closed-form quota-adjusted regret bound of the two-phase algorithm at the
// final round.
double t_fair_ucb_rregret_bound(const FairMabInstance& instance, std::uint64_t horizon);

}  // namespace fairmab
