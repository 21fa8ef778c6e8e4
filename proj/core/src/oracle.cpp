#include "fairmab/oracle.hpp"

#include <algorithm>
#include <utility>

namespace fairmab {

namespace {

std::string band_name(int band) {
  if (band == PartitionSnapshot::kBandS) {
    return "S";
  }
  if (band == PartitionSnapshot::kUnclassifiable) {
    return "unclassified";
  }
  return "M" + std::to_string(band);
}

}  // namespace

std::vector<std::size_t> PartitionSnapshot::s_members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < band.size(); ++i) {
    if (band[i] == kBandS) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<std::size_t> PartitionSnapshot::m_members(std::size_t j) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < band.size(); ++i) {
    if (band[i] == static_cast<int>(j)) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<std::size_t> PartitionSnapshot::unclassifiable() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < band.size(); ++i) {
    if (band[i] == kUnclassifiable) {
      out.push_back(i);
    }
  }
  return out;
}

std::size_t PartitionSnapshot::v_size(std::size_t j) const {
  std::size_t count = 0;
  for (const int b : band) {
    if (b >= 1 && b <= static_cast<int>(j)) {
      ++count;
    }
  }
  return count;
}

PartitionSnapshot classify(const BanditState& state, const FairMabInstance& instance) {
  if (!instance.validated()) {
    throw Error(Error::Code::MalformedInstance, "instance must be validated first");
  }
  const std::size_t k = instance.arms;
  PartitionSnapshot snap;
  snap.round = state.round;
  snap.band.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    // Scale the debt so each band has width 1: z in [k-j, k-j+1) means
    // M_j, z < 0 means S, z >= k means the fairness margin is gone. The
    // guarded floor puts debts on a boundary into the band above it
    // (closed-left intervals), including debt == alpha into M_k.
    const double z =
        (debt(state, instance, i) - instance.tolerance) * static_cast<double>(k);
    const double zf = guarded_floor(z);
    if (zf < 0.0) {
      snap.band[i] = PartitionSnapshot::kBandS;
    } else if (zf >= static_cast<double>(k)) {
      snap.band[i] = PartitionSnapshot::kUnclassifiable;
    } else {
      snap.band[i] = static_cast<int>(k) - static_cast<int>(zf);
    }
  }
  return snap;
}

PartitionCheck check_partition(const PartitionSnapshot& snapshot) {
  PartitionCheck check;
  const std::size_t k = snapshot.band.size();

  for (std::size_t i = 0; i < k; ++i) {
    if (snapshot.band[i] == PartitionSnapshot::kUnclassifiable) {
      check.ok = false;
      check.rule = "partition-cover";
      check.detail = "arm " + std::to_string(i + 1) + " has debt >= alpha + 1";
      return check;
    }
  }

  std::size_t prefix = 0;
  for (std::size_t j = 1; j <= k; ++j) {
    prefix += snapshot.m_members(j).size();
    if (prefix > j) {
      check.ok = false;
      check.rule = "band-cardinality";
      check.detail = "|V_" + std::to_string(j) + "| = " + std::to_string(prefix) +
                     " exceeds " + std::to_string(j);
      return check;
    }
  }
  return check;
}

namespace {

bool legal_transition(int prev_band, int next_band, bool pulled, std::size_t arms) {
  const int k = static_cast<int>(arms);
  if (pulled) {
    // A pulled arm sheds a whole pull against a quota gain below 1, so its
    // debt can only fall: from S it stays in S, from any M_j it lands in
    // the bottom band or leaves the M region entirely.
    if (prev_band == PartitionSnapshot::kBandS) {
      return next_band == PartitionSnapshot::kBandS;
    }
    return next_band == PartitionSnapshot::kBandS || next_band == k;
  }
  // An unpulled arm gains at most 1/k of debt, one band's width: it climbs
  // by at most one band. From M_1 there is no band left to climb to, which
  // is exactly why that configuration must never arise.
  if (prev_band == PartitionSnapshot::kBandS) {
    return next_band == PartitionSnapshot::kBandS || next_band == k;
  }
  if (prev_band == 1) {
    return false;
  }
  return next_band == prev_band || next_band == prev_band - 1;
}

}  // namespace

AuditReport audit_trace(const RunTrace& trace, const FairMabInstance& instance) {
  if (!instance.validated()) {
    throw Error(Error::Code::MalformedInstance, "instance must be validated first");
  }
  const std::size_t k = instance.arms;

  AuditReport report;
  BanditState state(k);
  PartitionSnapshot prev = classify(state, instance);
  {
    const PartitionCheck base = check_partition(prev);
    if (!base.ok) {
      report.passed = false;
      report.fail_round = 0;
      report.fail_rule = base.rule;
      report.detail = base.detail;
      return report;
    }
  }

  auto next_checkpoint = trace.checkpoints.begin();
  for (std::size_t e = 0; e < trace.events.size(); ++e) {
    const TraceEvent& ev = trace.events[e];
    if (ev.round != e + 1) {
      throw Error(Error::Code::TraceCorrupt,
                  "events not contiguous at position " + std::to_string(e));
    }
    if (ev.arm >= k) {
      throw Error(Error::Code::TraceCorrupt,
                  "event at round " + std::to_string(ev.round) + " pulls arm " +
                      std::to_string(ev.arm + 1) + " of " + std::to_string(k));
    }
    if (ev.reward > 1) {
      throw Error(Error::Code::TraceCorrupt,
                  "event at round " + std::to_string(ev.round) + " has non-Bernoulli reward");
    }
    state.record(ev.arm, static_cast<double>(ev.reward));
    const std::uint64_t t = ev.round;
    report.rounds_checked = t;

    // Integer fairness condition first: it is the contract the other
    // checks exist to explain, and any unclassifiable arm breaks it too.
    for (std::size_t i = 0; i < k; ++i) {
      const double fv = floor_violation(state, instance, i);
      if (exceeds(fv, instance.tolerance)) {
        report.passed = false;
        report.fail_round = t;
        report.fail_arm = i;
        report.fail_rule = "floor-violation";
        report.detail = "arm " + std::to_string(i + 1) + " is " + std::to_string(fv) +
                        " pulls behind its floor at t=" + std::to_string(t);
        return report;
      }
    }

    PartitionSnapshot snap = classify(state, instance);
    const PartitionCheck pc = check_partition(snap);
    if (!pc.ok) {
      report.passed = false;
      report.fail_round = t;
      report.fail_rule = pc.rule;
      report.detail = pc.detail;
      return report;
    }

    for (std::size_t i = 0; i < k; ++i) {
      const bool pulled = i == ev.arm;
      if (!legal_transition(prev.band[i], snap.band[i], pulled, k)) {
        report.passed = false;
        report.fail_round = t;
        report.fail_arm = i;
        report.fail_rule = "transition";
        report.detail = "arm " + std::to_string(i + 1) + " (" +
                        (pulled ? "pulled" : "not pulled") + ") moved " +
                        band_name(prev.band[i]) + " -> " + band_name(snap.band[i]);
        return report;
      }
    }
    prev = std::move(snap);

    while (next_checkpoint != trace.checkpoints.end() && next_checkpoint->round == t) {
      const BanditState& cp = next_checkpoint->state;
      if (cp.round != state.round || cp.pulls != state.pulls ||
          cp.rewards != state.rewards) {
        throw Error(Error::Code::TraceCorrupt,
                    "checkpoint at round " + std::to_string(t) +
                        " disagrees with the event replay");
      }
      ++next_checkpoint;
    }
  }

  if (next_checkpoint != trace.checkpoints.end()) {
    throw Error(Error::Code::TraceCorrupt,
                "checkpoint at round " + std::to_string(next_checkpoint->round) +
                    " has no matching events");
  }
  return report;
}

std::string format_audit(const AuditReport& report) {
  if (report.passed) {
    return "pass (" + std::to_string(report.rounds_checked) + " rounds)";
  }
  std::string out = "FAIL at t=" + std::to_string(report.fail_round) + " rule=" +
                    report.fail_rule;
  if (report.fail_arm != AuditReport::kNoArm) {
    out += " arm=" + std::to_string(report.fail_arm + 1);
  }
  if (!report.detail.empty()) {
    out += " (" + report.detail + ")";
  }
  return out;
}

}  // namespace fairmab
