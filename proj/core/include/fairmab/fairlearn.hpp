#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairmab/core.hpp"
#include "fairmab/learners.hpp"

namespace fairmab {

// One completed round: the round index (from 1), the pulled arm (from 0
// internally) and the observed Bernoulli reward.
struct TraceEvent {
  std::uint64_t round;
  std::uint32_t arm;
  std::uint8_t reward;
};

// Full state snapshot at a given round, kept so metrics at that round never
// need a replay.
struct Checkpoint {
  std::uint64_t round;
  BanditState state;
};

// Complete record of one run: the instance it was played on, the seeds and
// algorithm label, the per-round events, snapshots at the checkpoint rounds,
// and the running maxima of the two fairness quantities over every round
// (checkpoints alone could miss the peak).
struct RunTrace {
  FairMabInstance instance;
  std::uint64_t seed = 0;
  std::string algo;
  std::vector<TraceEvent> events;
  std::vector<Checkpoint> checkpoints;
  double max_debt = 0.0;
  double max_floor_violation = 0.0;
};

// Arms whose fairness debt strictly exceeds the integer part of alpha
// (epsilon-guarded). These pre-empt the learner. The trigger uses
// floor(alpha) because the guaranteed quantity, floor(r_i t) - N_i, is an
// integer: a debt cap of alpha + 1 would let the deficit reach
// ceil(alpha), past a fractional tolerance. For whole-number alpha the two
// thresholds coincide.
std::vector<std::size_t> active_set(const BanditState& state,
                                    const FairMabInstance& instance);

// One decision of the meta-algorithm: the most indebted arm if any arm is
// past its slack (lowest index on ties), otherwise whatever the learner
// picks from the same state.
std::size_t fair_learn_step(const BanditState& state, const FairMabInstance& instance,
                            Learner& learner, std::mt19937_64* learner_rng);

// Snapshot plan used when the caller does not pass one: every round up to
// 10^4, otherwise 1000 log-spaced rounds. The final round is always
// included either way.
std::vector<std::uint64_t> default_checkpoint_rounds(std::uint64_t horizon);

// Plays `horizon` rounds of the fairness wrapper around `learner` against a
// Bernoulli environment seeded from `seed`. The learner's own randomness
// comes from a stream derived from the same seed, so a run is a pure
// function of (instance, learner, seed, horizon).
RunTrace run_fair_learn(const FairMabInstance& instance, Learner& learner,
                        std::uint64_t seed, std::uint64_t horizon,
                        std::span<const std::uint64_t> checkpoint_rounds);
RunTrace run_fair_learn(const FairMabInstance& instance, std::string_view learner_name,
                        std::uint64_t seed, std::uint64_t horizon);

// Same environment and seeding, but the learner plays unwrapped. With all
// quotas zero the wrapper never pre-empts and the two runs are identical
// event for event.
RunTrace run_bare_learner(const FairMabInstance& instance, Learner& learner,
                          std::uint64_t seed, std::uint64_t horizon,
                          std::span<const std::uint64_t> checkpoint_rounds);
RunTrace run_bare_learner(const FairMabInstance& instance, std::string_view learner_name,
                          std::uint64_t seed, std::uint64_t horizon);

// State after `round` completed rounds, rebuilt from the events.
BanditState replay_state(const RunTrace& trace, std::uint64_t round);

namespace detail {

// Shared driver for every algorithm in the library: the policy maps
// (state so far, round being decided, learner rng) to an arm.
using Policy =
    std::function<std::size_t(const BanditState&, std::uint64_t, std::mt19937_64*)>;

RunTrace run_policy(const FairMabInstance& instance, std::uint64_t seed,
                    std::uint64_t horizon, std::span<const std::uint64_t> checkpoint_rounds,
                    std::string algo, const Policy& policy);

}  // namespace detail

}  // namespace fairmab
