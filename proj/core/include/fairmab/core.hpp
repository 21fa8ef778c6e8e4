#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "fairmab/error.hpp"

namespace fairmab {

// Relative tolerance for quota boundary arithmetic. Decimal quotas (0.3,
// 0.05, ...) are not exact binary doubles, and both the fairness definition
// and the pre-emption rule compare products like r_i * t against integers or
// alpha. All such comparisons go through guarded_floor / exceeds so that
// noise below this relative scale cannot flip a boundary decision.
inline constexpr double kQuotaEpsilon = 1e-9;

// floor(x), except values within the relative guard *below* an integer are
// treated as that integer. guarded_floor(0.3 * 10) == 3, not 2.
double guarded_floor(double x);

// Strict "value > threshold" with the same relative guard: returns false
// when value exceeds threshold by no more than the guard. Used for the
// pre-emption test debt > alpha.
bool exceeds(double value, double threshold);

// A fair bandit problem: Bernoulli arms with means mu_i, per-arm pull-rate
// quotas r_i, and a fairness slack alpha (tolerance). Quotas must satisfy
// r_i in [0, 1/k) for each arm and sum(r) < 1.
struct FairMabInstance {
  static constexpr std::size_t kUnvalidated = std::numeric_limits<std::size_t>::max();

  std::size_t arms = 0;
  std::vector<double> means;
  std::vector<double> quotas;
  double tolerance = 0.0;  // alpha
  std::optional<std::uint64_t> horizon;

  // Index of the highest-mean arm (lowest index on ties). Set by
  // validate_instance; kUnvalidated until then.
  std::size_t best_arm = kUnvalidated;

  bool validated() const noexcept { return best_arm != kUnvalidated; }
};

// Checks every instance constraint and returns a copy with best_arm filled
// in. Throws Error with the matching code on the first violated constraint;
// the quota sum is checked before the per-arm quota range so that
// instances failing both report QuotaSumExceeded.
FairMabInstance validate_instance(FairMabInstance candidate);

// Running tally of a bandit execution: pull counts and accumulated rewards
// per arm after `round` completed rounds. Plain data so tests can construct
// arbitrary states; record() keeps the invariants for live runs.
struct BanditState {
  std::uint64_t round = 0;
  std::vector<std::uint64_t> pulls;
  std::vector<double> rewards;

  BanditState() = default;
  explicit BanditState(std::size_t arms) : pulls(arms, 0), rewards(arms, 0.0) {}

  std::size_t arms() const noexcept { return pulls.size(); }

  // Applies one observed (arm, reward) pair and advances the round counter.
  void record(std::size_t arm, double reward);

  // Sample mean of an arm; the arm must have been pulled at least once.
  double empirical_mean(std::size_t arm) const;
};

// Suboptimality gaps Delta_i = mu_best - mu_i (zero for the best arm).
struct GapVector {
  std::vector<double> deltas;
};

GapVector gaps(const FairMabInstance& instance);

// Fairness debt of one arm at the current round: r_i * t - N_i(t). Positive
// debt means the arm is behind its quota.
double debt(const BanditState& state, const FairMabInstance& instance, std::size_t arm);

// Integer-floor form of the debt, floor(r_i * t) - N_i(t), evaluated with
// guarded_floor. The fairness condition is floor_violation <= alpha at
// every round.
double floor_violation(const BanditState& state, const FairMabInstance& instance,
                       std::size_t arm);

}  // namespace fairmab
