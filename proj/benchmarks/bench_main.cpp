#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "fairmab/fairlearn.hpp"
#include "fairmab/horizon.hpp"
#include "fairmab/learners.hpp"
#include "fairmab/oracle.hpp"

namespace {

fairmab::FairMabInstance reference_instance() {
  fairmab::FairMabInstance inst;
  inst.arms = 3;
  inst.means = {0.7, 0.5, 0.4};
  inst.quotas = {0.2, 0.3, 0.25};
  inst.tolerance = 0.0;
  return fairmab::validate_instance(std::move(inst));
}

fairmab::FairMabInstance wide_instance(std::size_t arms) {
  fairmab::FairMabInstance inst;
  inst.arms = arms;
  for (std::size_t i = 0; i < arms; ++i) {
    inst.means.push_back(0.8 - 0.01 * static_cast<double>(i));
    inst.quotas.push_back(0.5 / static_cast<double>(arms));
  }
  inst.tolerance = 0.0;
  return fairmab::validate_instance(std::move(inst));
}

void BM_FairLearnRound(benchmark::State& state) {
  const auto inst = wide_instance(static_cast<std::size_t>(state.range(0)));
  const std::uint64_t horizon = 10'000;
  const std::vector<std::uint64_t> plan = {horizon};
  fairmab::Ucb1Learner learner;
  for (auto _ : state) {
    auto trace = fairmab::run_fair_learn(inst, learner, 42, horizon, plan);
    benchmark::DoNotOptimize(trace.max_debt);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(horizon));
}
BENCHMARK(BM_FairLearnRound)->Arg(3)->Arg(10)->Arg(50);

void BM_TFairUcbRun(benchmark::State& state) {
  const auto inst = wide_instance(10);
  const std::uint64_t horizon = 10'000;
  const std::vector<std::uint64_t> plan = {horizon};
  for (auto _ : state) {
    auto trace = fairmab::run_t_fair_ucb(inst, 42, horizon, plan);
    benchmark::DoNotOptimize(trace.max_debt);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(horizon));
}
BENCHMARK(BM_TFairUcbRun);

void BM_AuditTrace(benchmark::State& state) {
  const auto inst = reference_instance();
  const std::uint64_t horizon = 10'000;
  const std::vector<std::uint64_t> plan = {horizon};
  fairmab::Ucb1Learner learner;
  const auto trace = fairmab::run_fair_learn(inst, learner, 42, horizon, plan);
  for (auto _ : state) {
    auto report = fairmab::audit_trace(trace, inst);
    benchmark::DoNotOptimize(report.passed);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(horizon));
}
BENCHMARK(BM_AuditTrace);

void BM_Classify(benchmark::State& state) {
  const auto inst = wide_instance(static_cast<std::size_t>(state.range(0)));
  fairmab::BanditState bandit(inst.arms);
  for (std::size_t i = 0; i < inst.arms; ++i) {
    for (std::size_t n = 0; n < i + 1; ++n) {
      bandit.record(i, 1.0);
    }
  }
  for (auto _ : state) {
    auto snapshot = fairmab::classify(bandit, inst);
    benchmark::DoNotOptimize(snapshot.band.data());
  }
}
BENCHMARK(BM_Classify)->Arg(3)->Arg(10)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
