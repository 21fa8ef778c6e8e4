#include "fairmab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fairmab {

namespace {

constexpr double kTailConstant = 1.0 + std::numbers::pi * std::numbers::pi / 3.0;

void require_bound_inputs(const FairMabInstance& instance, std::uint64_t horizon) {
  if (!instance.validated()) {
    throw Error(Error::Code::MalformedInstance, "instance must be validated first");
  }
  if (horizon < 2) {
    throw Error(Error::Code::HorizonTooShort, "bound needs horizon >= 2");
  }
}

// Gaps with the degenerate case rejected: every suboptimal arm must be
// strictly below the best one for the gap-dependent bounds to exist.
GapVector distinct_gaps(const FairMabInstance& instance) {
  GapVector gap = gaps(instance);
  for (std::size_t i = 0; i < instance.arms; ++i) {
    if (i != instance.best_arm && gap.deltas[i] <= 0.0) {
      throw Error(Error::Code::DegenerateGaps,
                  "arm " + std::to_string(i + 1) + " ties the best arm");
    }
  }
  return gap;
}

}  // namespace

BanditState state_at(const RunTrace& trace, std::uint64_t round) {
  if (round == 0) {
    return BanditState(trace.instance.arms);
  }
  const auto it = std::lower_bound(
      trace.checkpoints.begin(), trace.checkpoints.end(), round,
      [](const Checkpoint& cp, std::uint64_t r) { return cp.round < r; });
  if (it != trace.checkpoints.end() && it->round == round) {
    return it->state;
  }
  if (round <= trace.events.size()) {
    return replay_state(trace, round);
  }
  throw Error(Error::Code::CheckpointMissing,
              "no checkpoint or events for round " + std::to_string(round));
}

double empirical_regret(const RunTrace& trace, std::uint64_t round) {
  const GapVector gap = gaps(trace.instance);
  const BanditState state = state_at(trace, round);
  double total = 0.0;
  for (std::size_t i = 0; i < trace.instance.arms; ++i) {
    total += gap.deltas[i] * static_cast<double>(state.pulls[i]);
  }
  return total;
}

double empirical_r_regret(const RunTrace& trace, std::uint64_t round) {
  const FairMabInstance& inst = trace.instance;
  const GapVector gap = gaps(inst);
  const BanditState state = state_at(trace, round);
  const double t = static_cast<double>(round);
  double total = 0.0;
  for (std::size_t i = 0; i < inst.arms; ++i) {
    const double forced =
        std::max(0.0, guarded_floor(inst.quotas[i] * t) - inst.tolerance);
    total += gap.deltas[i] * (static_cast<double>(state.pulls[i]) - forced);
  }
  return total;
}

double max_violation(const BanditState& state, const FairMabInstance& instance,
                     ViolationMode mode) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < instance.arms; ++i) {
    const double v = mode == ViolationMode::kReal ? debt(state, instance, i)
                                                  : floor_violation(state, instance, i);
    worst = std::max(worst, v);
  }
  return worst;
}

std::vector<std::size_t> s_set(const FairMabInstance& instance, std::uint64_t horizon) {
  require_bound_inputs(instance, horizon);
  const GapVector gap = distinct_gaps(instance);
  const double t = static_cast<double>(horizon);
  const double log_t = std::log(t);
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < instance.arms; ++i) {
    const double delta = gap.deltas[i];
    // The best arm has delta == 0, hence infinite demand; IEEE division
    // yields +inf and the comparison keeps it in the set.
    const double demand = 8.0 * log_t / (delta * delta);
    if (instance.quotas[i] * t - instance.tolerance < demand) {
      members.push_back(i);
    }
  }
  return members;
}

double fair_ucb_rregret_bound(const FairMabInstance& instance, std::uint64_t horizon) {
  require_bound_inputs(instance, horizon);
  const GapVector gap = distinct_gaps(instance);
  const double t = static_cast<double>(horizon);
  const double log_t = std::log(t);
  double bound = 0.0;
  for (std::size_t i = 0; i < instance.arms; ++i) {
    if (i == instance.best_arm) {
      continue;
    }
    const double delta = gap.deltas[i];
    bound += kTailConstant * delta;
    const double demand = 8.0 * log_t / (delta * delta);
    const double granted = instance.quotas[i] * t - instance.tolerance;
    if (granted < demand) {
      bound += delta * (demand - granted);
    }
  }
  return bound;
}

double ucb_regret_bound(const FairMabInstance& instance, std::uint64_t horizon) {
  // Unlike the quota-aware bounds this one is well defined at T=1 (zero
  // exploration term), so only T=0 is rejected.
  if (!instance.validated()) {
    throw Error(Error::Code::MalformedInstance, "instance must be validated first");
  }
  if (horizon < 1) {
    throw Error(Error::Code::HorizonTooShort, "bound needs horizon >= 1");
  }
  const GapVector gap = distinct_gaps(instance);
  const double log_t = std::log(static_cast<double>(horizon));
  double bound = 0.0;
  for (std::size_t i = 0; i < instance.arms; ++i) {
    if (i == instance.best_arm) {
      continue;
    }
    bound += 8.0 * log_t / gap.deltas[i] + kTailConstant * gap.deltas[i];
  }
  return bound;
}

double alpha_regret_bound(const FairMabInstance& instance, std::uint64_t horizon) {
  require_bound_inputs(instance, horizon);
  const GapVector gap = distinct_gaps(instance);
  const double t = static_cast<double>(horizon);
  const double log_t = std::log(t);
  double bound = 0.0;
  for (std::size_t i = 0; i < instance.arms; ++i) {
    if (i == instance.best_arm) {
      continue;
    }
    const double delta = gap.deltas[i];
    const double demand = 8.0 * log_t / (delta * delta);
    const double forced = std::max(0.0, instance.quotas[i] * t - instance.tolerance);
    bound += delta * std::max(demand, forced) + kTailConstant * delta;
  }
  return bound;
}

double distribution_free_bound(std::size_t arms, std::uint64_t horizon) {
  if (arms < 1) {
    throw Error(Error::Code::TooFewArms, "bound needs at least 1 arm");
  }
  if (horizon < 2) {
    throw Error(Error::Code::HorizonTooShort, "bound needs horizon >= 2");
  }
  const double t = static_cast<double>(horizon);
  return 2.0 * std::sqrt(2.0 * static_cast<double>(arms) * t * std::log(t)) + 2.0 / t;
}

double distribution_free_bound(const FairMabInstance& instance, std::uint64_t horizon) {
  return distribution_free_bound(instance.arms, horizon);
}

std::vector<double> alpha_threshold(const FairMabInstance& instance,
                                    std::uint64_t horizon) {
  require_bound_inputs(instance, horizon);
  const GapVector gap = distinct_gaps(instance);
  const double t = static_cast<double>(horizon);
  const double log_t = std::log(t);
  std::vector<double> thresholds(instance.arms);
  for (std::size_t i = 0; i < instance.arms; ++i) {
    if (i == instance.best_arm) {
      thresholds[i] = -std::numeric_limits<double>::infinity();
      continue;
    }
    const double delta = gap.deltas[i];
    thresholds[i] = instance.quotas[i] * t - 8.0 * log_t / (delta * delta);
  }
  return thresholds;
}

double alpha_knee(const FairMabInstance& instance, std::uint64_t horizon) {
  const std::vector<double> thresholds = alpha_threshold(instance, horizon);
  double knee = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < instance.arms; ++i) {
    if (i != instance.best_arm) {
      knee = std::max(knee, thresholds[i]);
    }
  }
  return knee;
}

BoundReport bound_report(const FairMabInstance& instance, std::uint64_t horizon) {
  BoundReport report;
  report.s_set = s_set(instance, horizon);
  report.fair_ucb_rregret_bound = fair_ucb_rregret_bound(instance, horizon);
  report.ucb_regret_bound = ucb_regret_bound(instance, horizon);
  report.alpha_regret_bound = alpha_regret_bound(instance, horizon);
  report.distribution_free_bound = distribution_free_bound(instance.arms, horizon);
  report.alpha_threshold = alpha_threshold(instance, horizon);
  return report;
}

MetricSeries trace_series(const RunTrace& trace) {
  MetricSeries series;
  series.checkpoints.reserve(trace.checkpoints.size());
  series.regret.reserve(trace.checkpoints.size());
  series.r_regret.reserve(trace.checkpoints.size());
  series.violation_real.reserve(trace.checkpoints.size());
  series.violation_floor.reserve(trace.checkpoints.size());

  const GapVector gap = gaps(trace.instance);
  const FairMabInstance& inst = trace.instance;
  for (const Checkpoint& cp : trace.checkpoints) {
    const double t = static_cast<double>(cp.round);
    double regret = 0.0;
    double r_regret = 0.0;
    for (std::size_t i = 0; i < inst.arms; ++i) {
      const double pulls = static_cast<double>(cp.state.pulls[i]);
      regret += gap.deltas[i] * pulls;
      const double forced =
          std::max(0.0, guarded_floor(inst.quotas[i] * t) - inst.tolerance);
      r_regret += gap.deltas[i] * (pulls - forced);
    }
    series.checkpoints.push_back(cp.round);
    series.regret.push_back(regret);
    series.r_regret.push_back(r_regret);
    series.violation_real.push_back(max_violation(cp.state, inst, ViolationMode::kReal));
    series.violation_floor.push_back(
        max_violation(cp.state, inst, ViolationMode::kFloor));
  }
  return series;
}

MetricSeries aggregate_mean(std::span<const MetricSeries> series, bool with_std) {
  if (series.empty()) {
    throw Error(Error::Code::InvalidCount, "nothing to aggregate");
  }
  const MetricSeries& first = series.front();
  for (const MetricSeries& s : series) {
    if (s.checkpoints != first.checkpoints) {
      throw Error(Error::Code::MalformedInstance,
                  "replications disagree on the checkpoint grid");
    }
  }

  const std::size_t n = series.size();
  const std::size_t points = first.checkpoints.size();
  MetricSeries out;
  out.checkpoints = first.checkpoints;
  out.replications = n;
  out.regret.assign(points, 0.0);
  out.r_regret.assign(points, 0.0);
  out.violation_real.assign(points, 0.0);
  out.violation_floor.assign(points, 0.0);

  for (const MetricSeries& s : series) {
    for (std::size_t p = 0; p < points; ++p) {
      out.regret[p] += s.regret[p];
      out.r_regret[p] += s.r_regret[p];
      out.violation_real[p] += s.violation_real[p];
      out.violation_floor[p] += s.violation_floor[p];
    }
  }
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t p = 0; p < points; ++p) {
    out.regret[p] *= inv;
    out.r_regret[p] *= inv;
    out.violation_real[p] *= inv;
    out.violation_floor[p] *= inv;
  }

  if (with_std) {
    out.regret_std.assign(points, 0.0);
    out.r_regret_std.assign(points, 0.0);
    if (n > 1) {
      for (const MetricSeries& s : series) {
        for (std::size_t p = 0; p < points; ++p) {
          const double dr = s.regret[p] - out.regret[p];
          const double dq = s.r_regret[p] - out.r_regret[p];
          out.regret_std[p] += dr * dr;
          out.r_regret_std[p] += dq * dq;
        }
      }
      for (std::size_t p = 0; p < points; ++p) {
        out.regret_std[p] = std::sqrt(out.regret_std[p] / static_cast<double>(n - 1));
        out.r_regret_std[p] = std::sqrt(out.r_regret_std[p] / static_cast<double>(n - 1));
      }
    }
  }
  return out;
}

}  // namespace fairmab
