// Config-driven experiment runner: alpha sweeps, metric time series with
// optional fairness audits, and closed-form bound reports. See README.md for
// the config schema and output formats.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairmab/experiment.hpp"
#include "fairmab/metrics.hpp"
#include "fairmab/version.hpp"

namespace {

int run(int argc, char** argv) {
  CLI::App app{"fairmab: fairness-constrained bandit experiment runner"};
  app.set_version_flag("--version", std::string(fairmab::kVersion));

  std::string config_path;
  std::string preset;
  std::string algo;
  std::string learner;
  std::uint64_t horizon = 0;
  double alpha = 0.0;
  std::string alpha_sweep;
  std::uint64_t seed = 0;
  std::uint32_t reps = 0;
  std::string out_dir;
  std::string profile;
  std::string checkpoints;
  unsigned threads = 0;
  bool audit = false;
  bool traces = false;
  bool bounds_only = false;

  app.add_option("--config", config_path, "Config file (key=value lines)")
      ->check(CLI::ExistingFile);
  app.add_option("--preset", preset, "Instance preset name");
  app.add_option("--algo", algo, "fair-learn | t-fair-ucb | bare-learner");
  app.add_option("--learner", learner, "ucb1 | uniform | fixed:<j>");
  app.add_option("--horizon", horizon, "Number of rounds T");
  auto* alpha_opt = app.add_option("--alpha", alpha, "Fairness slack");
  app.add_option("--alpha-sweep", alpha_sweep,
                 "Comma-separated alpha grid, or 'auto' for the default grid");
  auto* seed_opt = app.add_option("--seed", seed, "Base seed");
  auto* reps_opt = app.add_option("--reps", reps, "Replication count");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--profile", profile, "ci | full (horizon scale of preset 1)");
  app.add_option("--checkpoints", checkpoints, "auto | every | log");
  auto* threads_opt = app.add_option("--threads", threads, "Worker count (0 = all cores)");
  app.add_flag("--audit", audit, "Audit every replication; failures are fatal");
  app.add_flag("--traces", traces, "Write per-replication event files");
  app.add_flag("--bounds", bounds_only, "Emit the bound report CSV only, no simulation");

  CLI11_PARSE(app, argc, argv);

  fairmab::ExperimentConfig cfg;
  if (!config_path.empty()) {
    cfg = fairmab::parse_config_file(config_path);
  }

  // Flags override whatever the config file set.
  if (!preset.empty()) {
    cfg.preset = preset;
    cfg.instance = fairmab::FairMabInstance{};
  }
  if (!algo.empty()) {
    cfg.algo = algo;
  }
  if (!learner.empty()) {
    cfg.learner = learner;
  }
  if (horizon != 0) {
    cfg.horizon = horizon;
  }
  if (alpha_opt->count() > 0) {
    cfg.alpha = alpha;
    cfg.alpha_set = true;
  }
  if (!alpha_sweep.empty()) {
    if (alpha_sweep == "auto") {
      cfg.alpha_sweep_auto = true;
      cfg.alpha_sweep.clear();
    } else {
      cfg.alpha_sweep_auto = false;
      cfg.alpha_sweep.clear();
      std::stringstream ss(alpha_sweep);
      std::string item;
      while (std::getline(ss, item, ',')) {
        cfg.alpha_sweep.push_back(std::stod(item));
      }
    }
  }
  if (seed_opt->count() > 0) {
    cfg.seed = seed;
  }
  if (reps_opt->count() > 0) {
    cfg.replications = reps;
  }
  if (!out_dir.empty()) {
    cfg.out_dir = out_dir;
  }
  if (!profile.empty()) {
    cfg.profile = profile;
  }
  if (!checkpoints.empty()) {
    cfg.checkpoints = checkpoints;
  }
  if (threads_opt->count() > 0) {
    cfg.threads = threads;
  }
  if (audit) {
    cfg.audit = true;
  }
  if (traces) {
    cfg.emit_traces = true;
  }

  if (bounds_only) {
    const fairmab::ExperimentConfig final_cfg = fairmab::finalize_config(cfg);
    const fairmab::BoundReport report =
        fairmab::bound_report(final_cfg.instance, final_cfg.horizon);
    const std::filesystem::path out(final_cfg.out_dir);
    std::filesystem::create_directories(out);
    std::ofstream bounds(out / "bounds.csv", std::ios::binary);
    if (!bounds) {
      std::cerr << "error: cannot write " << (out / "bounds.csv").string() << '\n';
      return 1;
    }
    fairmab::write_bounds_csv(report, final_cfg.instance, final_cfg.horizon, bounds);
    std::ofstream manifest(out / "manifest.txt", std::ios::binary);
    fairmab::write_manifest(final_cfg, manifest);
    std::cout << "wrote " << (out / "bounds.csv").string() << '\n';
    return 0;
  }

  return fairmab::run_experiment(cfg, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fairmab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
