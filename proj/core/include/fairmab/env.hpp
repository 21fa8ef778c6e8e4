#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fairmab/error.hpp"

namespace fairmab {

// splitmix64 finalizer. The exact bit pattern is part of the reproducibility
// contract: replication seeds and learner streams are derived through it, so
// changing it changes every archived run.
std::uint64_t mix64(std::uint64_t z) noexcept;

// Seed for replication `replication` of a run family keyed by base_seed.
// Distinct replications get decorrelated generator states even for small
// consecutive bases.
std::uint64_t replication_seed(std::uint64_t base_seed, std::uint64_t replication) noexcept;

// Seed for the learner's private randomness stream, decoupled from the
// reward stream of the same run.
std::uint64_t learner_stream_seed(std::uint64_t run_seed) noexcept;

// Uniform double in [0, 1) from the top 53 bits of one generator step.
// Identical output on every conforming platform.
double uniform_unit(std::mt19937_64& rng);

// Stochastic Bernoulli reward source: arm i pays 1 with probability means[i].
// One generator step per draw regardless of the mean.
class BernoulliEnvironment {
 public:
  BernoulliEnvironment(std::vector<double> means, std::uint64_t seed);

  // Reward of one pull of `arm`, 0 or 1.
  int draw_reward(std::size_t arm);

  std::size_t arms() const noexcept { return means_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<double>& means() const noexcept { return means_; }

 private:
  std::vector<double> means_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

BernoulliEnvironment make_env(std::vector<double> means, std::uint64_t seed);

}  // namespace fairmab
