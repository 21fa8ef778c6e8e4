#include "fairmab/horizon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fairmab/learners.hpp"

namespace fairmab {

QuotaPlan quota_plan(const FairMabInstance& instance, std::uint64_t horizon) {
  if (!instance.validated()) {
    throw Error(Error::Code::MalformedInstance, "instance must be validated first");
  }
  if (horizon == 0) {
    throw Error(Error::Code::HorizonTooShort, "horizon must be >= 1");
  }
  QuotaPlan plan;
  plan.quotas.resize(instance.arms);
  for (std::size_t i = 0; i < instance.arms; ++i) {
    const double owed =
        guarded_floor(instance.quotas[i] * static_cast<double>(horizon));
    plan.quotas[i] = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(owed));
    plan.phase_length += plan.quotas[i];
  }
  if (plan.phase_length > horizon) {
    throw Error(Error::Code::HorizonTooShort,
                "horizon " + std::to_string(horizon) + " is shorter than the warm-up of " +
                    std::to_string(plan.phase_length) + " rounds");
  }
  return plan;
}

RunTrace run_t_fair_ucb(const FairMabInstance& instance, std::uint64_t seed,
                        std::uint64_t horizon,
                        std::span<const std::uint64_t> checkpoint_rounds) {
  const QuotaPlan plan = quota_plan(instance, horizon);

  // block_end[i] is the last warm-up round owned by arm i.
  std::vector<std::uint64_t> block_end(instance.arms);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < instance.arms; ++i) {
    acc += plan.quotas[i];
    block_end[i] = acc;
  }

  return detail::run_policy(
      instance, seed, horizon, checkpoint_rounds, "t-fair-ucb",
      [&instance, block_end, phase = plan.phase_length](
          const BanditState& state, std::uint64_t round, std::mt19937_64* rng) {
        if (round <= phase) {
          const auto it = std::lower_bound(block_end.begin(), block_end.end(), round);
          return static_cast<std::size_t>(it - block_end.begin());
        }
        return ucb1_select(DecisionContext{state, round, rng});
      });
}

RunTrace run_t_fair_ucb(const FairMabInstance& instance, std::uint64_t seed,
                        std::uint64_t horizon) {
  const auto plan = default_checkpoint_rounds(horizon);
  return run_t_fair_ucb(instance, seed, horizon, plan);
}

double t_fair_ucb_rregret_bound(const FairMabInstance& instance, std::uint64_t horizon) {
  if (horizon < 2) {
    throw Error(Error::Code::HorizonTooShort, "bound needs horizon >= 2");
  }
  const GapVector gap = gaps(instance);
  const double t = static_cast<double>(horizon);
  const double log_t = std::log(t);
  constexpr double kTailConstant = 1.0 + std::numbers::pi * std::numbers::pi / 3.0;

  double bound = 0.0;
  for (std::size_t i = 0; i < instance.arms; ++i) {
    if (i == instance.best_arm) {
      continue;
    }
    const double delta = gap.deltas[i];
    if (delta <= 0.0) {
      throw Error(Error::Code::DegenerateGaps,
                  "arm " + std::to_string(i + 1) + " ties the best arm");
    }
    bound += kTailConstant * delta;
    const double exploration = 8.0 * log_t / (delta * delta);
    const double scheduled = instance.quotas[i] * t;
    if (scheduled < exploration) {
      bound += delta * (exploration - scheduled);
    }
  }
  return bound;
}

}  // namespace fairmab
