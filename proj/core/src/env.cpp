#include "fairmab/env.hpp"

#include <string>

namespace fairmab {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t replication_seed(std::uint64_t base_seed, std::uint64_t replication) noexcept {
  return mix64(base_seed + replication * 0x9E3779B97F4A7C15ULL);
}

std::uint64_t learner_stream_seed(std::uint64_t run_seed) noexcept {
  return mix64(run_seed ^ 0xA5A5A5A5A5A5A5A5ULL);
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

BernoulliEnvironment::BernoulliEnvironment(std::vector<double> means, std::uint64_t seed)
    : means_(std::move(means)), seed_(seed), rng_(seed) {
  if (means_.empty()) {
    throw Error(Error::Code::TooFewArms, "environment needs at least one arm");
  }
  for (std::size_t i = 0; i < means_.size(); ++i) {
    if (!(means_[i] >= 0.0 && means_[i] <= 1.0)) {
      throw Error(Error::Code::MeanOutOfRange,
                  "mean of arm " + std::to_string(i + 1) + " is outside [0, 1]");
    }
  }
}

BernoulliEnvironment make_env(std::vector<double> means, std::uint64_t seed) {
  return BernoulliEnvironment(std::move(means), seed);
}

int BernoulliEnvironment::draw_reward(std::size_t arm) {
  if (arm >= means_.size()) {
    throw Error(Error::Code::IndexOutOfRange,
                "arm " + std::to_string(arm + 1) + " out of range");
  }
  // u < mu, with u in [0, 1): mean 1.0 always pays, mean 0.0 never does.
  return uniform_unit(rng_) < means_[arm] ? 1 : 0;
}

}  // namespace fairmab
