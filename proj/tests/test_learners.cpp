#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "fairmab/learners.hpp"

namespace {

fairmab::BanditState state_with(std::vector<std::uint64_t> pulls,
                                std::vector<double> rewards) {
  fairmab::BanditState state(pulls.size());
  state.pulls = std::move(pulls);
  state.rewards = std::move(rewards);
  for (const auto n : state.pulls) {
    state.round += n;
  }
  return state;
}

}  // namespace

TEST_CASE("ucb_index evaluates the exploration bonus") {
  CHECK(fairmab::ucb_index(0.5, 4, 100.0) == doctest::Approx(2.0174271293851467));
  CHECK(fairmab::ucb_index(0.6, 100, 101.0) == doctest::Approx(0.9038131174535181));
  CHECK(fairmab::ucb_index(1.0, 1, 101.0) == doctest::Approx(4.038131174535181));
  // ln(1) = 0: the index collapses to the empirical mean.
  CHECK(fairmab::ucb_index(0.25, 7, 1.0) == doctest::Approx(0.25));
  // ln(e^2) = 2 with one pull: bonus exactly 2.
  CHECK(fairmab::ucb_index(0.0, 1, std::exp(2.0)) == doctest::Approx(2.0));
}

TEST_CASE("ucb_index grows with the round and shrinks with the pull count") {
  CHECK(fairmab::ucb_index(0.5, 4, 200.0) > fairmab::ucb_index(0.5, 4, 100.0));
  CHECK(fairmab::ucb_index(0.5, 8, 100.0) < fairmab::ucb_index(0.5, 4, 100.0));
}

TEST_CASE("ucb_index rejects impossible arguments") {
  CHECK_THROWS_AS(fairmab::ucb_index(0.5, 0, 10.0), fairmab::Error);
  CHECK_THROWS_AS(fairmab::ucb_index(0.5, 1, 0.5), fairmab::Error);
  CHECK_THROWS_AS(fairmab::ucb_index(0.5, 1, 0.0), fairmab::Error);
}

TEST_CASE("ucb_index_table marks unpulled arms with an infinite index") {
  const auto state = state_with({2, 0, 1}, {1.0, 0.0, 0.0});
  const auto table = fairmab::ucb_index_table(state, 4);
  REQUIRE(table.size() == 3);
  CHECK(table[0] == doctest::Approx(fairmab::ucb_index(0.5, 2, 4.0)));
  CHECK(table[1] == std::numeric_limits<double>::infinity());
  CHECK(table[2] == doctest::Approx(fairmab::ucb_index(0.0, 1, 4.0)));
}

TEST_CASE("ucb1_select picks the larger index") {
  // Two arms at round 101: 100 pulls at mean 0.6 versus one lucky pull.
  const auto state = state_with({100, 1}, {60.0, 1.0});
  fairmab::DecisionContext ctx{state, 101, nullptr};
  CHECK(fairmab::ucb1_select(ctx) == 1);
}

TEST_CASE("ucb1_select sweeps unpulled arms in index order") {
  fairmab::BanditState state(3);
  fairmab::DecisionContext ctx{state, 1, nullptr};
  CHECK(fairmab::ucb1_select(ctx) == 0);
  state.record(0, 1.0);
  ctx.round = 2;
  CHECK(fairmab::ucb1_select(ctx) == 1);
  state.record(1, 0.0);
  ctx.round = 3;
  CHECK(fairmab::ucb1_select(ctx) == 2);
}

TEST_CASE("ucb1_select breaks exact ties toward the lowest index") {
  const auto state = state_with({3, 3, 3}, {2.0, 2.0, 2.0});
  fairmab::DecisionContext ctx{state, 10, nullptr};
  CHECK(fairmab::ucb1_select(ctx) == 0);
}

TEST_CASE("uniform learner needs its stream and covers all arms") {
  fairmab::UniformRandomLearner learner;
  fairmab::BanditState state(3);
  fairmab::DecisionContext no_rng{state, 1, nullptr};
  CHECK_THROWS_AS(learner.select(no_rng), fairmab::Error);

  std::mt19937_64 rng(11);
  fairmab::DecisionContext ctx{state, 1, &rng};
  std::vector<int> counts(3, 0);
  for (int i = 0; i < 3000; ++i) {
    const std::size_t arm = learner.select(ctx);
    REQUIRE(arm < 3);
    counts[arm] += 1;
  }
  for (const int c : counts) {
    CHECK(c > 800);  // roughly uniform
  }

  std::mt19937_64 replay(11);
  fairmab::DecisionContext ctx2{state, 1, &replay};
  std::mt19937_64 again(11);
  fairmab::DecisionContext ctx3{state, 1, &again};
  for (int i = 0; i < 100; ++i) {
    CHECK(learner.select(ctx2) == learner.select(ctx3));
  }
}

TEST_CASE("fixed learner always plays its arm and prints it from 1") {
  fairmab::FixedArmLearner learner(2, 3);
  fairmab::BanditState state(3);
  fairmab::DecisionContext ctx{state, 1, nullptr};
  CHECK(learner.select(ctx) == 2);
  CHECK(learner.name() == "fixed:3");
  CHECK_THROWS_AS(fairmab::FixedArmLearner(3, 3), fairmab::Error);
}

TEST_CASE("make_learner resolves the supported names") {
  CHECK(fairmab::make_learner("ucb1", 3)->name() == "ucb1");
  CHECK(fairmab::make_learner("uniform", 3)->name() == "uniform");

  auto fixed = fairmab::make_learner("fixed:2", 3);
  CHECK(fixed->name() == "fixed:2");
  fairmab::BanditState state(3);
  fairmab::DecisionContext ctx{state, 1, nullptr};
  CHECK(fixed->select(ctx) == 1);

  using fairmab::Error;
  auto expect_code = [](const char* name, Error::Code code) {
    try {
      fairmab::make_learner(name, 3);
      FAIL_CHECK("expected make_learner to reject ", name);
    } catch (const Error& e) {
      CHECK(e.code() == code);
    }
  };
  expect_code("fixed:0", Error::Code::IndexOutOfRange);
  expect_code("fixed:4", Error::Code::IndexOutOfRange);
  expect_code("fixed:x", Error::Code::ParseError);
  expect_code("fixed:", Error::Code::ParseError);
  expect_code("greedy", Error::Code::ParseError);
}
