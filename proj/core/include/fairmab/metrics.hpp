#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fairmab/core.hpp"
#include "fairmab/fairlearn.hpp"

namespace fairmab {

enum class ViolationMode { kReal, kFloor };

// State of a trace after `round` completed rounds: a stored checkpoint when
// one matches, otherwise a replay of the events. Throws CheckpointMissing
// when the trace holds neither.
BanditState state_at(const RunTrace& trace, std::uint64_t round);

// Gap-weighted pull counts, sum_i Delta_i * N_i(t). Averaging this across
// replications estimates the expected regret.
double empirical_regret(const RunTrace& trace, std::uint64_t round);

// Quota-adjusted regret: pulls that the quotas force are not charged,
// sum_i Delta_i * (N_i(t) - max(0, floor(r_i t) - alpha)).
double empirical_r_regret(const RunTrace& trace, std::uint64_t round);

// Worst fairness deficit across arms at one state: the real-valued debt
// r_i t - N_i(t) (kReal) or its integer-floor form (kFloor). Fairness means
// the floor form never exceeds alpha.
double max_violation(const BanditState& state, const FairMabInstance& instance,
                     ViolationMode mode);

// Arms whose quota share of the horizon (minus the slack) stays below their
// exploration demand 8 ln(T) / Delta_i^2; these still cost exploration
// regret on top of the forced pulls. The best arm always qualifies (its
// demand is infinite).
std::vector<std::size_t> s_set(const FairMabInstance& instance, std::uint64_t horizon);

// Closed-form bounds at the final round. The gap-dependent ones require
// strictly positive gaps on every suboptimal arm.
double fair_ucb_rregret_bound(const FairMabInstance& instance, std::uint64_t horizon);
// The unconstrained logarithmic bound; well defined from T=1 on.
double ucb_regret_bound(const FairMabInstance& instance, std::uint64_t horizon);
double alpha_regret_bound(const FairMabInstance& instance, std::uint64_t horizon);
// Gap-free: needs only the arm count, which may be 1.
double distribution_free_bound(std::size_t arms, std::uint64_t horizon);
double distribution_free_bound(const FairMabInstance& instance, std::uint64_t horizon);

// Per-arm alpha above which an arm stops forcing extra regret at the given
// horizon: r_i T - 8 ln(T) / Delta_i^2. The best arm gets -infinity.
std::vector<double> alpha_threshold(const FairMabInstance& instance,
                                    std::uint64_t horizon);

// Largest per-arm threshold over the suboptimal arms: slacks above this
// make the regret bound collapse to the unconstrained one.
double alpha_knee(const FairMabInstance& instance, std::uint64_t horizon);

struct BoundReport {
  std::vector<std::size_t> s_set;
  double fair_ucb_rregret_bound = 0.0;
  double ucb_regret_bound = 0.0;
  double alpha_regret_bound = 0.0;
  double distribution_free_bound = 0.0;
  std::vector<double> alpha_threshold;
};

BoundReport bound_report(const FairMabInstance& instance, std::uint64_t horizon);

// Metric curves along a checkpoint grid, either from a single run or
// averaged across replications on identical grids.
struct MetricSeries {
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> regret;
  std::vector<double> r_regret;
  std::vector<double> violation_real;
  std::vector<double> violation_floor;
  std::size_t replications = 1;
  // Sample standard deviations, filled by aggregate_mean when requested.
  std::vector<double> regret_std;
  std::vector<double> r_regret_std;
};

// Curves of one trace along its stored checkpoints. Violations here are the
// instantaneous max over arms at the checkpoint round.
MetricSeries trace_series(const RunTrace& trace);

// Pointwise mean across replications; grids must match exactly.
MetricSeries aggregate_mean(std::span<const MetricSeries> series, bool with_std);

}  // namespace fairmab
