#include <cmath>
#include <limits>

#include "doctest.h"
#include "fairmab/core.hpp"

namespace {

fairmab::FairMabInstance small_instance() {
  fairmab::FairMabInstance inst;
  inst.arms = 3;
  inst.means = {0.7, 0.5, 0.4};
  inst.quotas = {0.2, 0.3, 0.25};
  inst.tolerance = 0.0;
  return inst;
}

}  // namespace

TEST_CASE("guarded_floor matches plain floor away from integer boundaries") {
  CHECK(fairmab::guarded_floor(0.0) == 0.0);
  CHECK(fairmab::guarded_floor(5.0) == 5.0);
  CHECK(fairmab::guarded_floor(2.4) == 2.0);
  CHECK(fairmab::guarded_floor(-0.5) == -1.0);
  CHECK(fairmab::guarded_floor(-2.4) == -3.0);
}

TEST_CASE("guarded_floor rounds up values within the guard below an integer") {
  // 0.29 * 100 = 28.999999999999996 in binary; the intended value is 29.
  CHECK(fairmab::guarded_floor(0.29 * 100.0) == 29.0);
  CHECK(fairmab::guarded_floor(0.3 * 200.0) == 60.0);
  CHECK(fairmab::guarded_floor(3.0 - 3e-10) == 3.0);
  // Outside the relative guard the plain floor wins.
  CHECK(fairmab::guarded_floor(3.0 - 1e-7) == 2.0);
  // A hair below zero counts as zero, not -1.
  CHECK(fairmab::guarded_floor(-1e-12) == 0.0);
}

TEST_CASE("exceeds is a strict comparison with a relative guard") {
  CHECK(fairmab::exceeds(0.5, 0.3));
  CHECK_FALSE(fairmab::exceeds(0.3, 0.5));
  CHECK_FALSE(fairmab::exceeds(1.0, 1.0));
  CHECK_FALSE(fairmab::exceeds(1.0 + 1e-10, 1.0));
  CHECK(fairmab::exceeds(1.0 + 1e-8, 1.0));
  // The guard scales with the magnitude of the operands.
  CHECK_FALSE(fairmab::exceeds(1e9 + 0.5, 1e9));
  CHECK(fairmab::exceeds(1e9 + 3.0, 1e9));
  CHECK_FALSE(fairmab::exceeds(-0.5, -0.3));
}

TEST_CASE("validate_instance accepts a well-formed instance and marks the best arm") {
  const auto inst = fairmab::validate_instance(small_instance());
  CHECK(inst.validated());
  CHECK(inst.best_arm == 0);
  CHECK(inst.arms == 3);
}

TEST_CASE("validate_instance breaks mean ties toward the lowest index") {
  auto inst = small_instance();
  inst.means = {0.5, 0.5, 0.2};
  const auto validated = fairmab::validate_instance(inst);
  CHECK(validated.best_arm == 0);
}

TEST_CASE("validate_instance rejects bad instances with the matching code") {
  using fairmab::Error;
  auto expect_code = [](fairmab::FairMabInstance inst, Error::Code code) {
    try {
      fairmab::validate_instance(std::move(inst));
      FAIL_CHECK("expected a validation error");
    } catch (const Error& e) {
      CHECK(e.code() == code);
    }
  };

  auto inst = small_instance();
  inst.arms = 1;
  inst.means = {0.5};
  inst.quotas = {0.0};
  expect_code(inst, Error::Code::TooFewArms);

  inst = small_instance();
  inst.means.pop_back();
  expect_code(inst, Error::Code::MalformedInstance);

  inst = small_instance();
  inst.means[1] = 1.2;
  expect_code(inst, Error::Code::MeanOutOfRange);

  inst = small_instance();
  inst.means[0] = -0.1;
  expect_code(inst, Error::Code::MeanOutOfRange);

  inst = small_instance();
  inst.means[2] = std::numeric_limits<double>::quiet_NaN();
  expect_code(inst, Error::Code::MeanOutOfRange);

  inst = small_instance();
  inst.tolerance = -1.0;
  expect_code(inst, Error::Code::NegativeAlpha);

  inst = small_instance();
  inst.tolerance = std::numeric_limits<double>::infinity();
  expect_code(inst, Error::Code::NegativeAlpha);

  // Per-arm bound: 0.5 >= 1/2 even though the sum stays below 1.
  inst = small_instance();
  inst.arms = 2;
  inst.means = {0.9, 0.1};
  inst.quotas = {0.5, 0.3};
  expect_code(inst, Error::Code::QuotaOutOfRange);

  inst = small_instance();
  inst.quotas = {-0.1, 0.3, 0.25};
  expect_code(inst, Error::Code::QuotaOutOfRange);

  // Sum violation wins over the per-arm bound when both are broken.
  inst = small_instance();
  inst.quotas = {0.4, 0.4, 0.3};
  expect_code(inst, Error::Code::QuotaSumExceeded);

  inst = small_instance();
  inst.horizon = 0;
  expect_code(inst, Error::Code::HorizonTooShort);
}

TEST_CASE("BanditState record keeps counts, sums and the round number in step") {
  fairmab::BanditState state(3);
  CHECK(state.arms() == 3);
  CHECK(state.round == 0);

  state.record(1, 1.0);
  state.record(1, 0.0);
  state.record(2, 1.0);
  CHECK(state.round == 3);
  CHECK(state.pulls == std::vector<std::uint64_t>{0, 2, 1});
  CHECK(state.empirical_mean(1) == doctest::Approx(0.5));
  CHECK(state.empirical_mean(2) == doctest::Approx(1.0));

  CHECK_THROWS_AS(state.record(3, 1.0), fairmab::Error);
  CHECK_THROWS_AS(state.empirical_mean(0), fairmab::Error);  // no pulls yet
  CHECK_THROWS_AS(state.empirical_mean(9), fairmab::Error);
}

TEST_CASE("gaps require a validated instance and measure distance to the best mean") {
  CHECK_THROWS_AS(fairmab::gaps(small_instance()), fairmab::Error);

  const auto inst = fairmab::validate_instance(small_instance());
  const auto g = fairmab::gaps(inst);
  REQUIRE(g.deltas.size() == 3);
  CHECK(g.deltas[0] == doctest::Approx(0.0));
  CHECK(g.deltas[1] == doctest::Approx(0.2));
  CHECK(g.deltas[2] == doctest::Approx(0.3));
}

TEST_CASE("debt and floor_violation track the quota deficit of one arm") {
  const auto inst = fairmab::validate_instance(small_instance());
  fairmab::BanditState state(3);
  for (int i = 0; i < 10; ++i) {
    state.record(0, 1.0);
  }
  // Round 10: arm 2 (quota 0.3) is owed 3 pulls and has none.
  CHECK(fairmab::debt(state, inst, 1) == doctest::Approx(3.0));
  CHECK(fairmab::floor_violation(state, inst, 1) == doctest::Approx(3.0));
  CHECK(fairmab::debt(state, inst, 0) == doctest::Approx(2.0 - 10.0));
  CHECK(fairmab::floor_violation(state, inst, 0) == doctest::Approx(2.0 - 10.0));

  CHECK_THROWS_AS(fairmab::debt(state, inst, 7), fairmab::Error);
}

TEST_CASE("floor_violation uses the guarded floor on inexact quota products") {
  fairmab::FairMabInstance inst;
  inst.arms = 2;
  inst.means = {0.9, 0.1};
  inst.quotas = {0.29, 0.1};
  inst = fairmab::validate_instance(inst);

  fairmab::BanditState state(2);
  for (int i = 0; i < 100; ++i) {
    state.record(1, 0.0);
  }
  // 0.29 * 100 is fractionally below 29; the floor must still be 29.
  CHECK(fairmab::floor_violation(state, inst, 0) == doctest::Approx(29.0));
}
