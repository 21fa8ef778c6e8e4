#include "fairmab/learners.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "fairmab/env.hpp"

namespace fairmab {

double ucb_index(double empirical_mean, std::uint64_t pull_count, double round) {
  if (pull_count == 0) {
    throw Error(Error::Code::InvalidCount, "ucb_index needs at least one pull");
  }
  if (!(round >= 1.0)) {
    throw Error(Error::Code::InvalidCount, "ucb_index needs round >= 1");
  }
  return empirical_mean +
         std::sqrt(2.0 * std::log(round) / static_cast<double>(pull_count));
}

std::vector<double> ucb_index_table(const BanditState& state, std::uint64_t round) {
  std::vector<double> table(state.arms());
  for (std::size_t i = 0; i < state.arms(); ++i) {
    table[i] = state.pulls[i] == 0
                   ? std::numeric_limits<double>::infinity()
                   : ucb_index(state.empirical_mean(i), state.pulls[i],
                               static_cast<double>(round));
  }
  return table;
}

std::size_t ucb1_select(const DecisionContext& ctx) {
  const std::vector<double> table = ucb_index_table(ctx.state, ctx.round);
  // max_element keeps the first of equal elements, which gives the
  // lowest-index tie rule and makes the warm-up sweep arms in order.
  return static_cast<std::size_t>(
      std::max_element(table.begin(), table.end()) - table.begin());
}

std::size_t UniformRandomLearner::select(const DecisionContext& ctx) {
  if (ctx.rng == nullptr) {
    throw Error(Error::Code::InvalidCount, "uniform learner needs an rng stream");
  }
  const std::size_t k = ctx.state.arms();
  const auto pick = static_cast<std::size_t>(uniform_unit(*ctx.rng) *
                                             static_cast<double>(k));
  return std::min(pick, k - 1);
}

FixedArmLearner::FixedArmLearner(std::size_t arm, std::size_t arms) : arm_(arm) {
  if (arm >= arms) {
    throw Error(Error::Code::IndexOutOfRange,
                "fixed arm " + std::to_string(arm + 1) + " out of range for " +
                    std::to_string(arms) + " arms");
  }
}

std::string FixedArmLearner::name() const {
  return "fixed:" + std::to_string(arm_ + 1);
}

std::unique_ptr<Learner> make_learner(std::string_view name, std::size_t arms) {
  if (name == "ucb1") {
    return std::make_unique<Ucb1Learner>();
  }
  if (name == "uniform") {
    return std::make_unique<UniformRandomLearner>();
  }
  constexpr std::string_view kFixedPrefix = "fixed:";
  if (name.substr(0, kFixedPrefix.size()) == kFixedPrefix) {
    const std::string_view digits = name.substr(kFixedPrefix.size());
    std::uint64_t one_based = 0;
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), one_based);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw Error(Error::Code::ParseError,
                  "bad fixed-arm learner name: " + std::string(name));
    }
    if (one_based < 1 || one_based > arms) {
      throw Error(Error::Code::IndexOutOfRange,
                  "fixed arm " + std::to_string(one_based) + " out of range for " +
                      std::to_string(arms) + " arms");
    }
    return std::make_unique<FixedArmLearner>(static_cast<std::size_t>(one_based - 1),
                                             arms);
  }
  throw Error(Error::Code::ParseError, "unknown learner: " + std::string(name));
}

}  // namespace fairmab
