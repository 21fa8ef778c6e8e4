#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fairmab/core.hpp"

namespace fairmab {

// Everything a learner may look at when asked for an arm: the tally of the
// rounds played so far and the index of the round being decided (one past
// state.round). rng is the learner's private stream; deterministic learners
// ignore it and it may be null for them.
struct DecisionContext {
  const BanditState& state;
  std::uint64_t round;
  std::mt19937_64* rng = nullptr;
};

class Learner {
 public:
  virtual ~Learner() = default;
  virtual std::size_t select(const DecisionContext& ctx) = 0;
  virtual std::string name() const = 0;
};

// UCB index mean + sqrt(2 ln(round) / pull_count). The arm must have at
// least one pull; unpulled arms are handled by the sentinel in
// ucb_index_table.
double ucb_index(double empirical_mean, std::uint64_t pull_count, double round);

// Index of every arm at the given round; arms with no pulls get +infinity
// so that each arm is tried once before the indices take over.
std::vector<double> ucb_index_table(const BanditState& state, std::uint64_t round);

// Arm with the highest index, lowest index number on ties. This is the
// whole of UCB1 once the sentinel covers the warm-up pulls.
std::size_t ucb1_select(const DecisionContext& ctx);

class Ucb1Learner final : public Learner {
 public:
  std::size_t select(const DecisionContext& ctx) override { return ucb1_select(ctx); }
  std::string name() const override { return "ucb1"; }
};

class UniformRandomLearner final : public Learner {
 public:
  std::size_t select(const DecisionContext& ctx) override;
  std::string name() const override { return "uniform"; }
};

// Always plays one arm. Useful as an adversarially unhelpful learner in
// fairness tests.
class FixedArmLearner final : public Learner {
 public:
  FixedArmLearner(std::size_t arm, std::size_t arms);
  std::size_t select(const DecisionContext&) override { return arm_; }
  std::string name() const override;

 private:
  std::size_t arm_;
};

// "ucb1" | "uniform" | "fixed:<j>" with j counted from 1. Unknown names are
// a ParseError; a fixed arm outside [1, arms] is an IndexOutOfRange.
std::unique_ptr<Learner> make_learner(std::string_view name, std::size_t arms);

}  // namespace fairmab
