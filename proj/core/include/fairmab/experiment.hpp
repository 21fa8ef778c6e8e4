#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairmab/core.hpp"
#include "fairmab/metrics.hpp"
#include "fairmab/oracle.hpp"

namespace fairmab {

// A complete experiment description, as read from a flat key=value config
// file (keys match the field comments) or assembled from CLI flags. The
// instance comes either inline (arms/means/quotas/alpha) or from a named
// preset; the two are mutually exclusive.
struct ExperimentConfig {
  std::string preset;                  // preset=paper-instance-1 | paper-instance-2
  FairMabInstance instance;            // arms= means= quotas= (inline form)
  double alpha = 0.0;                  // alpha=
  bool alpha_set = false;
  std::string algo = "fair-learn";     // algo=fair-learn | t-fair-ucb | bare-learner
  std::string learner = "ucb1";        // learner=ucb1 | uniform | fixed:<j>
  std::uint64_t horizon = 0;           // horizon= (0: take the preset default)
  std::vector<double> alpha_sweep;     // alpha_sweep=0,10,100 | auto
  bool alpha_sweep_auto = false;
  std::uint64_t seed = 1;              // seed=
  std::uint32_t replications = 50;     // replications=
  std::string checkpoints = "auto";    // checkpoints=auto | every | log
  std::string out_dir = "out";         // out=
  bool audit = false;                  // audit=true | false
  bool emit_traces = false;            // traces=true | false
  std::string profile = "ci";          // profile=ci | full
  unsigned threads = 0;                // threads= (0: hardware concurrency)
};

// Appendix-scale reference instances. The profile picks the horizon of the
// large instance: "ci" runs it at 10^5 rounds, "full" at the original 10^6.
FairMabInstance preset_instance(std::string_view name, std::string_view profile);

// Parses the key=value config text. Unknown keys, bad numbers and malformed
// lines raise ParseError with the line number; later assignments to the
// same key win.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

// Resolves a raw config into a runnable one: expands the preset, settles
// the horizon and alpha, validates the instance, materializes an "auto"
// sweep into the default grid. Every runner below requires a finalized
// config.
ExperimentConfig finalize_config(ExperimentConfig config);

// The default alpha grid: 0, the powers of ten up to the horizon, and the
// predicted knee of the regret curve when it is positive.
std::vector<double> default_alpha_grid(const FairMabInstance& instance,
                                       std::uint64_t horizon);

// Everything retained from one replication once its full trace is dropped.
struct ReplicationResult {
  std::uint32_t replication = 0;  // counted from 0; reports print from 1
  std::uint64_t seed = 0;
  MetricSeries series;
  double max_debt = 0.0;
  double max_floor_violation = 0.0;
  double final_regret = 0.0;
  double final_r_regret = 0.0;
  std::vector<std::uint64_t> final_pulls;
  bool audited = false;
  AuditReport audit;
};

// Runs `config.replications` independent replications of the configured
// algorithm on `instance` with per-replication seeds derived from the base
// seed, dispatched over a worker pool. Results land in replication order,
// so the output is identical for any worker count.
std::vector<ReplicationResult> run_replications(const ExperimentConfig& config,
                                                const FairMabInstance& instance,
                                                std::span<const std::uint64_t> plan);

// Time-series experiment (regret / r-regret / violation curves).
struct SeriesResult {
  ExperimentConfig config;
  std::vector<ReplicationResult> replications;
  MetricSeries mean;
  std::size_t audit_failures = 0;
};

SeriesResult run_series(const ExperimentConfig& config);

// Alpha-sweep experiment (cost of fairness): final-round statistics per
// alpha, plus the per-arm threshold predictions for the knee comparison.
struct SweepRow {
  double alpha = 0.0;
  std::uint32_t replications = 0;
  double regret_mean = 0.0;
  double regret_std = 0.0;
  double regret_se = 0.0;
  double r_regret_mean = 0.0;
  double r_regret_std = 0.0;
  double viol_real_mean = 0.0;
  double viol_real_max = 0.0;
  double viol_floor_mean = 0.0;
  double viol_floor_max = 0.0;
};

struct SweepResult {
  ExperimentConfig config;
  std::vector<SweepRow> rows;
  std::vector<double> thresholds;  // per arm; empty when gaps are degenerate
  double knee = 0.0;               // max threshold over suboptimal arms
  bool has_thresholds = false;
};

SweepResult run_alpha_sweep(const ExperimentConfig& config);

// Serialization. All floating-point values are printed with 9 significant
// digits so reruns compare byte for byte.
void write_metrics_csv(const SeriesResult& result, std::ostream& out);
void write_sweep_csv(const SweepResult& result, std::ostream& out);
void write_thresholds_csv(const SweepResult& result, std::ostream& out);
void write_bounds_csv(const BoundReport& report, const FairMabInstance& instance,
                      std::uint64_t horizon, std::ostream& out);
void write_manifest(const ExperimentConfig& config, std::ostream& out);
void write_audit_summary(const SeriesResult& result, std::ostream& out);

// Runs the experiment the finalized config describes and writes its files
// into config.out_dir (manifest plus, per mode: alpha_sweep.csv and
// alpha_thresholds.csv, or metrics.csv with optional audit.txt and
// traces/). Returns the process exit code: 0 on success, 2 when auditing
// was requested and some replication failed it.
int run_experiment(const ExperimentConfig& config, std::ostream& log);

}  // namespace fairmab
