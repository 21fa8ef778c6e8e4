#include "fairmab/fairlearn.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "fairmab/env.hpp"

namespace fairmab {

namespace {

void require_runnable(const FairMabInstance& instance, std::uint64_t horizon) {
  if (!instance.validated()) {
    throw Error(Error::Code::MalformedInstance, "instance must be validated first");
  }
  if (horizon == 0) {
    throw Error(Error::Code::HorizonTooShort, "horizon must be >= 1");
  }
}

// Pre-emption threshold. The debt argument caps out at one unit above this
// value, so holding the integer floor deficit within a fractional alpha
// requires triggering on floor(alpha), not alpha itself.
double preemption_slack(const FairMabInstance& instance) {
  return guarded_floor(instance.tolerance);
}

}  // namespace

std::vector<std::size_t> active_set(const BanditState& state,
                                    const FairMabInstance& instance) {
  const double slack = preemption_slack(instance);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < instance.arms; ++i) {
    if (exceeds(debt(state, instance, i), slack)) {
      active.push_back(i);
    }
  }
  return active;
}

std::size_t fair_learn_step(const BanditState& state, const FairMabInstance& instance,
                            Learner& learner, std::mt19937_64* learner_rng) {
  // Scan once: track the most indebted arm (first on ties) and whether any
  // arm is past its slack. When one is, the global argmax is necessarily
  // past it too, so the argmax over the active set equals the argmax over
  // all arms.
  const double slack = preemption_slack(instance);
  std::size_t most_indebted = 0;
  double top_debt = debt(state, instance, 0);
  bool any_active = exceeds(top_debt, slack);
  for (std::size_t i = 1; i < instance.arms; ++i) {
    const double d = debt(state, instance, i);
    if (d > top_debt) {
      top_debt = d;
      most_indebted = i;
    }
    any_active = any_active || exceeds(d, slack);
  }
  if (any_active) {
    return most_indebted;
  }
  return learner.select(DecisionContext{state, state.round + 1, learner_rng});
}

std::vector<std::uint64_t> default_checkpoint_rounds(std::uint64_t horizon) {
  if (horizon == 0) {
    throw Error(Error::Code::HorizonTooShort, "horizon must be >= 1");
  }
  std::vector<std::uint64_t> rounds;
  constexpr std::uint64_t kDenseLimit = 10'000;
  if (horizon <= kDenseLimit) {
    rounds.resize(horizon);
    for (std::uint64_t t = 1; t <= horizon; ++t) {
      rounds[t - 1] = t;
    }
    return rounds;
  }
  constexpr std::size_t kSparseCount = 1'000;
  rounds.reserve(kSparseCount);
  const double log_h = std::log(static_cast<double>(horizon));
  for (std::size_t j = 0; j < kSparseCount; ++j) {
    const double frac = static_cast<double>(j + 1) / static_cast<double>(kSparseCount);
    auto t = static_cast<std::uint64_t>(std::llround(std::exp(frac * log_h)));
    rounds.push_back(std::clamp<std::uint64_t>(t, 1, horizon));
  }
  rounds.push_back(horizon);
  std::sort(rounds.begin(), rounds.end());
  rounds.erase(std::unique(rounds.begin(), rounds.end()), rounds.end());
  return rounds;
}

namespace detail {

RunTrace run_policy(const FairMabInstance& instance, std::uint64_t seed,
                    std::uint64_t horizon, std::span<const std::uint64_t> checkpoint_rounds,
                    std::string algo, const Policy& policy) {
  require_runnable(instance, horizon);

  // Normalize the snapshot plan: in range, sorted, unique, final round
  // present so every trace can answer end-of-run queries without a replay.
  std::vector<std::uint64_t> plan;
  plan.reserve(checkpoint_rounds.size() + 1);
  for (const std::uint64_t t : checkpoint_rounds) {
    if (t >= 1 && t <= horizon) {
      plan.push_back(t);
    }
  }
  plan.push_back(horizon);
  std::sort(plan.begin(), plan.end());
  plan.erase(std::unique(plan.begin(), plan.end()), plan.end());

  BernoulliEnvironment env(instance.means, seed);
  std::mt19937_64 learner_rng(learner_stream_seed(seed));

  RunTrace trace;
  trace.instance = instance;
  trace.seed = seed;
  trace.algo = std::move(algo);
  trace.events.reserve(horizon);
  trace.checkpoints.reserve(plan.size());

  BanditState state(instance.arms);
  auto next_checkpoint = plan.begin();
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    const std::size_t arm = policy(state, t, &learner_rng);
    if (arm >= instance.arms) {
      throw Error(Error::Code::IndexOutOfRange,
                  "policy chose arm " + std::to_string(arm + 1) + " out of range");
    }
    const int reward = env.draw_reward(arm);
    state.record(arm, static_cast<double>(reward));
    trace.events.push_back({t, static_cast<std::uint32_t>(arm),
                            static_cast<std::uint8_t>(reward)});

    // The fairness maxima move every round, so they are tracked here and
    // not reconstructed from checkpoints.
    for (std::size_t i = 0; i < instance.arms; ++i) {
      trace.max_debt = std::max(trace.max_debt, debt(state, instance, i));
      trace.max_floor_violation =
          std::max(trace.max_floor_violation, floor_violation(state, instance, i));
    }

    if (next_checkpoint != plan.end() && *next_checkpoint == t) {
      trace.checkpoints.push_back({t, state});
      ++next_checkpoint;
    }
  }
  return trace;
}

}  // namespace detail

RunTrace run_fair_learn(const FairMabInstance& instance, Learner& learner,
                        std::uint64_t seed, std::uint64_t horizon,
                        std::span<const std::uint64_t> checkpoint_rounds) {
  return detail::run_policy(
      instance, seed, horizon, checkpoint_rounds, "fair-learn:" + learner.name(),
      [&](const BanditState& state, std::uint64_t, std::mt19937_64* rng) {
        return fair_learn_step(state, instance, learner, rng);
      });
}

RunTrace run_fair_learn(const FairMabInstance& instance, std::string_view learner_name,
                        std::uint64_t seed, std::uint64_t horizon) {
  const auto learner = make_learner(learner_name, instance.arms);
  const auto plan = default_checkpoint_rounds(horizon);
  return run_fair_learn(instance, *learner, seed, horizon, plan);
}

RunTrace run_bare_learner(const FairMabInstance& instance, Learner& learner,
                          std::uint64_t seed, std::uint64_t horizon,
                          std::span<const std::uint64_t> checkpoint_rounds) {
  return detail::run_policy(
      instance, seed, horizon, checkpoint_rounds, "bare:" + learner.name(),
      [&](const BanditState& state, std::uint64_t round, std::mt19937_64* rng) {
        return learner.select(DecisionContext{state, round, rng});
      });
}

RunTrace run_bare_learner(const FairMabInstance& instance, std::string_view learner_name,
                          std::uint64_t seed, std::uint64_t horizon) {
  const auto learner = make_learner(learner_name, instance.arms);
  const auto plan = default_checkpoint_rounds(horizon);
  return run_bare_learner(instance, *learner, seed, horizon, plan);
}

BanditState replay_state(const RunTrace& trace, std::uint64_t round) {
  if (round > trace.events.size()) {
    throw Error(Error::Code::CheckpointMissing,
                "trace has only " + std::to_string(trace.events.size()) +
                    " events, cannot reach round " + std::to_string(round));
  }
  BanditState state(trace.instance.arms);
  for (std::uint64_t e = 0; e < round; ++e) {
    const TraceEvent& ev = trace.events[e];
    if (ev.round != e + 1) {
      throw Error(Error::Code::TraceCorrupt,
                  "events are not contiguous at position " + std::to_string(e));
    }
    state.record(ev.arm, static_cast<double>(ev.reward));
  }
  return state;
}

}  // namespace fairmab
