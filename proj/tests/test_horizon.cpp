#include <vector>

#include "doctest.h"
#include "fairmab/horizon.hpp"
#include "fairmab/metrics.hpp"

namespace {

fairmab::FairMabInstance make_instance(std::vector<double> means,
                                       std::vector<double> quotas, double alpha) {
  fairmab::FairMabInstance inst;
  inst.arms = means.size();
  inst.means = std::move(means);
  inst.quotas = std::move(quotas);
  inst.tolerance = alpha;
  return fairmab::validate_instance(std::move(inst));
}

fairmab::FairMabInstance reference_instance() {
  return make_instance({0.7, 0.5, 0.4}, {0.2, 0.3, 0.25}, 0.0);
}

fairmab::FairMabInstance ladder_instance() {
  std::vector<double> means;
  for (int i = 0; i < 10; ++i) {
    means.push_back(0.8 - 0.01 * i);
  }
  return make_instance(std::move(means), std::vector<double>(10, 0.05), 0.0);
}

}  // namespace

TEST_CASE("quota_plan owes each arm its floor share, at least one pull") {
  const auto plan = fairmab::quota_plan(reference_instance(), 200);
  CHECK(plan.quotas == std::vector<std::uint64_t>{40, 60, 50});
  CHECK(plan.phase_length == 150);

  const auto zero = fairmab::quota_plan(
      make_instance({0.7, 0.5, 0.4}, {0.0, 0.0, 0.0}, 0.0), 200);
  CHECK(zero.quotas == std::vector<std::uint64_t>{1, 1, 1});
  CHECK(zero.phase_length == 3);

  const auto ladder = fairmab::quota_plan(ladder_instance(), 100'000);
  CHECK(ladder.quotas == std::vector<std::uint64_t>(10, 5000));
  CHECK(ladder.phase_length == 50'000);
}

TEST_CASE("quota_plan needs room for the whole warm-up") {
  const auto inst = make_instance({0.7, 0.5, 0.4}, {0.0, 0.0, 0.0}, 0.0);
  CHECK_THROWS_AS(fairmab::quota_plan(inst, 2), fairmab::Error);
  // Exactly enough room is fine.
  CHECK(fairmab::quota_plan(inst, 3).phase_length == 3);
}

TEST_CASE("the two-phase run plays its warm-up blocks in arm order") {
  const auto inst = reference_instance();
  const auto trace = fairmab::run_t_fair_ucb(inst, 17, 200);
  REQUIRE(trace.events.size() == 200);
  CHECK(trace.algo == "t-fair-ucb");

  for (std::size_t e = 0; e < 150; ++e) {
    const std::uint32_t expected = e < 40 ? 0 : e < 100 ? 1 : 2;
    CHECK(trace.events[e].arm == expected);
  }

  // Every quota is met by the final round.
  const auto final_state = fairmab::replay_state(trace, 200);
  CHECK(final_state.pulls[0] >= 40);
  CHECK(final_state.pulls[1] >= 60);
  CHECK(final_state.pulls[2] >= 50);
}

TEST_CASE("a horizon equal to the warm-up leaves no learner phase") {
  const auto inst = make_instance({0.7, 0.5, 0.4}, {0.0, 0.0, 0.0}, 0.0);
  const auto trace = fairmab::run_t_fair_ucb(inst, 3, 3);
  REQUIRE(trace.events.size() == 3);
  CHECK(trace.events[0].arm == 0);
  CHECK(trace.events[1].arm == 1);
  CHECK(trace.events[2].arm == 2);
}

TEST_CASE("two-phase runs are deterministic in the seed") {
  const auto inst = reference_instance();
  const auto a = fairmab::run_t_fair_ucb(inst, 8, 200);
  const auto b = fairmab::run_t_fair_ucb(inst, 8, 200);
  for (std::size_t e = 0; e < 200; ++e) {
    CHECK(a.events[e].arm == b.events[e].arm);
    CHECK(a.events[e].reward == b.events[e].reward);
  }
}

TEST_CASE("the horizon-aware quota-adjusted bound evaluates its closed form") {
  CHECK(fairmab::t_fair_ucb_rregret_bound(reference_instance(), 200) ==
        doctest::Approx(328.36609183671743).epsilon(1e-9));
  CHECK(fairmab::t_fair_ucb_rregret_bound(ladder_instance(), 1'000'000) ==
        doctest::Approx(18027.78137060059).epsilon(1e-9));

  // When quotas are too large to leave exploration debt, only the constant
  // term remains.
  const auto saturated = make_instance({0.9, 0.1}, {0.2, 0.2}, 0.0);
  CHECK(fairmab::t_fair_ucb_rregret_bound(saturated, 10'000) ==
        doctest::Approx(3.4318945069571627).epsilon(1e-9));
}

TEST_CASE("with zero quotas the bound collapses to the unconstrained one") {
  const auto inst = make_instance({0.9, 0.1}, {0.0, 0.0}, 0.0);
  CHECK(fairmab::t_fair_ucb_rregret_bound(inst, 10'000) ==
        doctest::Approx(fairmab::ucb_regret_bound(inst, 10'000)).epsilon(1e-12));
  CHECK(fairmab::ucb_regret_bound(inst, 10'000) ==
        doctest::Approx(95.535298226719).epsilon(1e-9));
}

TEST_CASE("the bound rejects degenerate gaps and tiny horizons") {
  const auto flat = make_instance({0.5, 0.5}, {0.1, 0.1}, 0.0);
  CHECK_THROWS_AS(fairmab::t_fair_ucb_rregret_bound(flat, 100), fairmab::Error);
  CHECK_THROWS_AS(fairmab::t_fair_ucb_rregret_bound(reference_instance(), 1),
                  fairmab::Error);
}
