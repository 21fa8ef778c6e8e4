#include "fairmab/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fairmab {

namespace {

double guard_scale(double a, double b) {
  return std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

double guarded_floor(double x) {
  const double nearest = std::round(x);
  if (nearest > x && nearest - x <= kQuotaEpsilon * std::max(1.0, std::fabs(x))) {
    return nearest;
  }
  return std::floor(x);
}

bool exceeds(double value, double threshold) {
  return value - threshold > kQuotaEpsilon * guard_scale(value, threshold);
}

FairMabInstance validate_instance(FairMabInstance candidate) {
  if (candidate.arms < 2) {
    throw Error(Error::Code::TooFewArms,
                "instance needs at least 2 arms, got " + std::to_string(candidate.arms));
  }
  if (candidate.means.size() != candidate.arms || candidate.quotas.size() != candidate.arms) {
    throw Error(Error::Code::MalformedInstance,
                "means/quotas length must equal the arm count " +
                    std::to_string(candidate.arms));
  }
  for (std::size_t i = 0; i < candidate.arms; ++i) {
    const double mu = candidate.means[i];
    if (!(mu >= 0.0 && mu <= 1.0)) {
      throw Error(Error::Code::MeanOutOfRange,
                  "mean of arm " + std::to_string(i + 1) + " is outside [0, 1]");
    }
  }
  if (!(candidate.tolerance >= 0.0) || !std::isfinite(candidate.tolerance)) {
    throw Error(Error::Code::NegativeAlpha, "alpha must be finite and >= 0");
  }

  // Coarse per-quota range first (also rejects NaN), then the sum, then the
  // strict per-arm bound. This order makes sum violations report as such
  // even when an individual quota is also too large.
  double quota_sum = 0.0;
  for (std::size_t i = 0; i < candidate.arms; ++i) {
    const double r = candidate.quotas[i];
    if (!(r >= 0.0 && r < 1.0)) {
      throw Error(Error::Code::QuotaOutOfRange,
                  "quota of arm " + std::to_string(i + 1) + " is outside [0, 1)");
    }
    quota_sum += r;
  }
  if (!(quota_sum < 1.0)) {
    throw Error(Error::Code::QuotaSumExceeded, "quota sum must be < 1");
  }
  const double per_arm_cap = 1.0 / static_cast<double>(candidate.arms);
  for (std::size_t i = 0; i < candidate.arms; ++i) {
    if (!(candidate.quotas[i] < per_arm_cap)) {
      throw Error(Error::Code::QuotaOutOfRange,
                  "quota of arm " + std::to_string(i + 1) + " must be < 1/k");
    }
  }

  if (candidate.horizon.has_value() && *candidate.horizon == 0) {
    throw Error(Error::Code::HorizonTooShort, "horizon must be >= 1");
  }

  candidate.best_arm = static_cast<std::size_t>(
      std::max_element(candidate.means.begin(), candidate.means.end()) -
      candidate.means.begin());
  return candidate;
}

void BanditState::record(std::size_t arm, double reward) {
  if (arm >= pulls.size()) {
    throw Error(Error::Code::IndexOutOfRange,
                "arm " + std::to_string(arm + 1) + " out of range");
  }
  pulls[arm] += 1;
  rewards[arm] += reward;
  round += 1;
}

double BanditState::empirical_mean(std::size_t arm) const {
  if (arm >= pulls.size()) {
    throw Error(Error::Code::IndexOutOfRange,
                "arm " + std::to_string(arm + 1) + " out of range");
  }
  if (pulls[arm] == 0) {
    throw Error(Error::Code::InvalidCount,
                "arm " + std::to_string(arm + 1) + " has no pulls yet");
  }
  return rewards[arm] / static_cast<double>(pulls[arm]);
}

GapVector gaps(const FairMabInstance& instance) {
  if (!instance.validated()) {
    throw Error(Error::Code::MalformedInstance, "instance must be validated first");
  }
  GapVector out;
  out.deltas.resize(instance.arms);
  const double best = instance.means[instance.best_arm];
  for (std::size_t i = 0; i < instance.arms; ++i) {
    out.deltas[i] = best - instance.means[i];
  }
  return out;
}

double debt(const BanditState& state, const FairMabInstance& instance, std::size_t arm) {
  if (arm >= instance.arms || arm >= state.arms()) {
    throw Error(Error::Code::IndexOutOfRange,
                "arm " + std::to_string(arm + 1) + " out of range");
  }
  return instance.quotas[arm] * static_cast<double>(state.round) -
         static_cast<double>(state.pulls[arm]);
}

double floor_violation(const BanditState& state, const FairMabInstance& instance,
                       std::size_t arm) {
  if (arm >= instance.arms || arm >= state.arms()) {
    throw Error(Error::Code::IndexOutOfRange,
                "arm " + std::to_string(arm + 1) + " out of range");
  }
  return guarded_floor(instance.quotas[arm] * static_cast<double>(state.round)) -
         static_cast<double>(state.pulls[arm]);
}

}  // namespace fairmab
