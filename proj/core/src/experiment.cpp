#include "fairmab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include "fairmab/env.hpp"
#include "fairmab/fairlearn.hpp"
#include "fairmab/horizon.hpp"
#include "fairmab/learners.hpp"
#include "fairmab/trace_io.hpp"
#include "fairmab/version.hpp"

namespace fairmab {

namespace {

std::string fmt_g9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

std::string fmt_exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string join_exact(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) {
      out += ',';
    }
    out += fmt_exact(values[i]);
  }
  return out;
}

std::string trim(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])) != 0) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1])) != 0) {
    --end;
  }
  return text.substr(begin, end - begin);
}

[[noreturn]] void config_fail(std::size_t line_no, const std::string& what) {
  throw Error(Error::Code::ParseError,
              "config line " + std::to_string(line_no) + ": " + what);
}

double parse_f64(const std::string& text, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) {
      config_fail(line_no, "trailing characters in number '" + text + "'");
    }
    return value;
  } catch (const std::invalid_argument&) {
    config_fail(line_no, "bad number '" + text + "'");
  } catch (const std::out_of_range&) {
    config_fail(line_no, "number out of range '" + text + "'");
  }
}

std::uint64_t parse_u64(const std::string& text, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    config_fail(line_no, "bad integer '" + text + "'");
  }
  return value;
}

std::vector<double> parse_f64_list(const std::string& text, std::size_t line_no) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    values.push_back(parse_f64(trim(item), line_no));
  }
  if (values.empty()) {
    config_fail(line_no, "empty list");
  }
  return values;
}

bool parse_bool(const std::string& text, std::size_t line_no) {
  if (text == "true") {
    return true;
  }
  if (text == "false") {
    return false;
  }
  config_fail(line_no, "expected true or false, got '" + text + "'");
}

// The algorithm label used in trace headers and CSV rows; matches the label
// the run functions put on their traces.
std::string algo_label(const ExperimentConfig& config) {
  if (config.algo == "t-fair-ucb") {
    return "t-fair-ucb";
  }
  if (config.algo == "bare-learner") {
    return "bare:" + config.learner;
  }
  return "fair-learn:" + config.learner;
}

RunTrace run_configured(const ExperimentConfig& config, const FairMabInstance& instance,
                        std::uint64_t seed, std::span<const std::uint64_t> plan) {
  if (config.algo == "t-fair-ucb") {
    return run_t_fair_ucb(instance, seed, config.horizon, plan);
  }
  const auto learner = make_learner(config.learner, instance.arms);
  if (config.algo == "bare-learner") {
    return run_bare_learner(instance, *learner, seed, config.horizon, plan);
  }
  return run_fair_learn(instance, *learner, seed, config.horizon, plan);
}

std::vector<std::uint64_t> log_spaced_rounds(std::uint64_t horizon) {
  constexpr std::size_t kCount = 1'000;
  std::vector<std::uint64_t> rounds;
  rounds.reserve(kCount + 1);
  const double log_h = std::log(static_cast<double>(horizon));
  for (std::size_t j = 0; j < kCount; ++j) {
    const double frac = static_cast<double>(j + 1) / static_cast<double>(kCount);
    auto t = static_cast<std::uint64_t>(std::llround(std::exp(frac * log_h)));
    rounds.push_back(std::clamp<std::uint64_t>(t, 1, horizon));
  }
  rounds.push_back(horizon);
  std::sort(rounds.begin(), rounds.end());
  rounds.erase(std::unique(rounds.begin(), rounds.end()), rounds.end());
  return rounds;
}

std::vector<std::uint64_t> plan_for(const ExperimentConfig& config) {
  if (config.checkpoints == "every") {
    // A dense plan stores one state snapshot per round; cap it where the
    // memory cost stops being sane.
    constexpr std::uint64_t kDenseCap = 100'000;
    if (config.horizon > kDenseCap) {
      throw Error(Error::Code::InvalidCount,
                  "checkpoints=every supports horizons up to " + std::to_string(kDenseCap));
    }
    std::vector<std::uint64_t> rounds(config.horizon);
    for (std::uint64_t t = 1; t <= config.horizon; ++t) {
      rounds[t - 1] = t;
    }
    return rounds;
  }
  if (config.checkpoints == "log") {
    return log_spaced_rounds(config.horizon);
  }
  return default_checkpoint_rounds(config.horizon);
}

std::string trace_file_name(std::uint32_t replication) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "rep_%04u.trace", replication + 1);
  return buf;
}

}  // namespace

FairMabInstance preset_instance(std::string_view name, std::string_view profile) {
  if (profile != "ci" && profile != "full") {
    throw Error(Error::Code::ParseError, "unknown profile: " + std::string(profile));
  }
  FairMabInstance inst;
  if (name == "paper-instance-1") {
    inst.arms = 10;
    inst.means.resize(10);
    for (std::size_t i = 0; i < 10; ++i) {
      inst.means[i] = 0.8 - 0.01 * static_cast<double>(i);
    }
    inst.quotas.assign(10, 0.05);
    inst.tolerance = 0.0;
    inst.horizon = profile == "full" ? 1'000'000 : 100'000;
    return validate_instance(inst);
  }
  if (name == "paper-instance-2") {
    inst.arms = 3;
    inst.means = {0.7, 0.5, 0.4};
    inst.quotas = {0.2, 0.3, 0.25};
    inst.tolerance = 0.0;
    inst.horizon = 200;
    return validate_instance(inst);
  }
  throw Error(Error::Code::UnknownPreset, "unknown preset: " + std::string(name));
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      config_fail(line_no, "expected key=value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "preset") {
      cfg.preset = value;
    } else if (key == "arms") {
      cfg.instance.arms = static_cast<std::size_t>(parse_u64(value, line_no));
    } else if (key == "means") {
      cfg.instance.means = parse_f64_list(value, line_no);
    } else if (key == "quotas") {
      cfg.instance.quotas = parse_f64_list(value, line_no);
    } else if (key == "alpha") {
      cfg.alpha = parse_f64(value, line_no);
      cfg.alpha_set = true;
    } else if (key == "horizon") {
      cfg.horizon = parse_u64(value, line_no);
    } else if (key == "algo") {
      cfg.algo = value;
    } else if (key == "learner") {
      cfg.learner = value;
    } else if (key == "alpha_sweep") {
      if (value == "auto") {
        cfg.alpha_sweep_auto = true;
        cfg.alpha_sweep.clear();
      } else {
        cfg.alpha_sweep = parse_f64_list(value, line_no);
        cfg.alpha_sweep_auto = false;
      }
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, line_no);
    } else if (key == "replications") {
      const std::uint64_t reps = parse_u64(value, line_no);
      if (reps > std::numeric_limits<std::uint32_t>::max()) {
        config_fail(line_no, "replication count out of range");
      }
      cfg.replications = static_cast<std::uint32_t>(reps);
    } else if (key == "checkpoints") {
      cfg.checkpoints = value;
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "audit") {
      cfg.audit = parse_bool(value, line_no);
    } else if (key == "traces") {
      cfg.emit_traces = parse_bool(value, line_no);
    } else if (key == "profile") {
      cfg.profile = value;
    } else if (key == "threads") {
      const std::uint64_t threads = parse_u64(value, line_no);
      if (threads > std::numeric_limits<unsigned>::max()) {
        config_fail(line_no, "thread count out of range");
      }
      cfg.threads = static_cast<unsigned>(threads);
    } else {
      config_fail(line_no, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Error::Code::ParseError, "cannot open config " + path.string());
  }
  return parse_config(in);
}

ExperimentConfig finalize_config(ExperimentConfig config) {
  if (config.profile != "ci" && config.profile != "full") {
    throw Error(Error::Code::ParseError, "unknown profile: " + config.profile);
  }
  if (config.algo != "fair-learn" && config.algo != "t-fair-ucb" &&
      config.algo != "bare-learner") {
    throw Error(Error::Code::ParseError, "unknown algo: " + config.algo);
  }
  if (config.checkpoints != "auto" && config.checkpoints != "every" &&
      config.checkpoints != "log") {
    throw Error(Error::Code::ParseError,
                "unknown checkpoint plan: " + config.checkpoints);
  }

  if (!config.preset.empty()) {
    if (config.instance.arms != 0 || !config.instance.means.empty() ||
        !config.instance.quotas.empty()) {
      throw Error(Error::Code::ParseError,
                  "preset and inline instance are mutually exclusive");
    }
    config.instance = preset_instance(config.preset, config.profile);
  }
  if (config.instance.arms == 0) {
    config.instance.arms = config.instance.means.size();
  }
  if (config.alpha_set) {
    config.instance.tolerance = config.alpha;
  }
  config.instance = validate_instance(config.instance);

  if (config.horizon == 0) {
    if (!config.instance.horizon.has_value()) {
      throw Error(Error::Code::HorizonTooShort, "no horizon configured");
    }
    config.horizon = *config.instance.horizon;
  }
  if (config.replications == 0) {
    throw Error(Error::Code::InvalidCount, "replications must be >= 1");
  }
  if (config.algo != "t-fair-ucb") {
    make_learner(config.learner, config.instance.arms);  // validate the name early
  }
  if (config.alpha_sweep_auto) {
    config.alpha_sweep = default_alpha_grid(config.instance, config.horizon);
  }
  return config;
}

std::vector<double> default_alpha_grid(const FairMabInstance& instance,
                                       std::uint64_t horizon) {
  std::vector<double> grid{0.0};
  for (double a = 10.0; a <= static_cast<double>(horizon); a *= 10.0) {
    grid.push_back(a);
  }
  try {
    const double knee = alpha_knee(instance, horizon);
    if (knee > 0.0) {
      grid.push_back(knee);
    }
  } catch (const Error&) {
    // Degenerate gaps have no knee; the power grid stands on its own.
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<ReplicationResult> run_replications(const ExperimentConfig& config,
                                                const FairMabInstance& instance,
                                                std::span<const std::uint64_t> plan) {
  if (!instance.validated()) {
    throw Error(Error::Code::MalformedInstance, "instance must be validated first");
  }
  if (config.replications == 0) {
    throw Error(Error::Code::InvalidCount, "replications must be >= 1");
  }

  const std::filesystem::path trace_dir =
      std::filesystem::path(config.out_dir) / "traces";
  if (config.emit_traces) {
    std::filesystem::create_directories(trace_dir);
  }

  std::vector<ReplicationResult> results(config.replications);
  std::atomic<std::uint32_t> cursor{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&]() {
    try {
      for (;;) {
        const std::uint32_t r = cursor.fetch_add(1);
        if (r >= config.replications || failed.load()) {
          return;
        }
        ReplicationResult& slot = results[r];
        slot.replication = r;
        slot.seed = replication_seed(config.seed, r);
        const RunTrace trace = run_configured(config, instance, slot.seed, plan);
        slot.series = trace_series(trace);
        slot.max_debt = trace.max_debt;
        slot.max_floor_violation = trace.max_floor_violation;
        slot.final_regret = empirical_regret(trace, config.horizon);
        slot.final_r_regret = empirical_r_regret(trace, config.horizon);
        slot.final_pulls = state_at(trace, config.horizon).pulls;
        if (config.audit) {
          slot.audited = true;
          slot.audit = audit_trace(trace, instance);
        }
        if (config.emit_traces) {
          write_trace_file(trace, trace_dir / trace_file_name(r));
        }
      }
    } catch (...) {
      const std::scoped_lock lock(error_mutex);
      if (!first_error) {
        first_error = std::current_exception();
      }
      failed.store(true);
    }
  };

  unsigned workers = config.threads != 0 ? config.threads
                                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, config.replications);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(work);
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
  return results;
}

SeriesResult run_series(const ExperimentConfig& config) {
  SeriesResult out;
  out.config = config;
  const std::vector<std::uint64_t> plan = plan_for(config);
  out.replications = run_replications(config, config.instance, plan);

  std::vector<MetricSeries> per_rep;
  per_rep.reserve(out.replications.size());
  for (const ReplicationResult& rep : out.replications) {
    per_rep.push_back(rep.series);
  }
  out.mean = aggregate_mean(per_rep, true);
  for (const ReplicationResult& rep : out.replications) {
    if (rep.audited && !rep.audit.passed) {
      ++out.audit_failures;
    }
  }
  return out;
}

SweepResult run_alpha_sweep(const ExperimentConfig& config) {
  if (config.alpha_sweep.empty()) {
    throw Error(Error::Code::InvalidCount, "alpha sweep list is empty");
  }
  SweepResult out;
  out.config = config;

  // Only the final round matters here; a single-point plan keeps the
  // per-replication state tiny. Trace emission is a series-run feature.
  const std::vector<std::uint64_t> plan{config.horizon};
  ExperimentConfig inner = config;
  inner.emit_traces = false;

  for (const double alpha : config.alpha_sweep) {
    FairMabInstance inst = config.instance;
    inst.tolerance = alpha;
    inst = validate_instance(inst);

    const std::vector<ReplicationResult> reps = run_replications(inner, inst, plan);
    const auto n = static_cast<double>(reps.size());

    SweepRow row;
    row.alpha = alpha;
    row.replications = static_cast<std::uint32_t>(reps.size());
    for (const ReplicationResult& rep : reps) {
      row.regret_mean += rep.final_regret;
      row.r_regret_mean += rep.final_r_regret;
      row.viol_real_mean += rep.max_debt;
      row.viol_floor_mean += rep.max_floor_violation;
      row.viol_real_max = std::max(row.viol_real_max, rep.max_debt);
      row.viol_floor_max = std::max(row.viol_floor_max, rep.max_floor_violation);
    }
    row.regret_mean /= n;
    row.r_regret_mean /= n;
    row.viol_real_mean /= n;
    row.viol_floor_mean /= n;
    if (reps.size() > 1) {
      double sq_regret = 0.0;
      double sq_rregret = 0.0;
      for (const ReplicationResult& rep : reps) {
        sq_regret += (rep.final_regret - row.regret_mean) *
                     (rep.final_regret - row.regret_mean);
        sq_rregret += (rep.final_r_regret - row.r_regret_mean) *
                      (rep.final_r_regret - row.r_regret_mean);
      }
      row.regret_std = std::sqrt(sq_regret / (n - 1.0));
      row.r_regret_std = std::sqrt(sq_rregret / (n - 1.0));
      row.regret_se = row.regret_std / std::sqrt(n);
    }
    out.rows.push_back(row);
  }

  try {
    out.thresholds = alpha_threshold(config.instance, config.horizon);
    out.knee = alpha_knee(config.instance, config.horizon);
    out.has_thresholds = true;
  } catch (const Error&) {
    out.has_thresholds = false;
  }
  return out;
}

void write_metrics_csv(const SeriesResult& result, std::ostream& out) {
  out << "t,rep,algo,alpha,regret,r_regret,viol_real,viol_floor\n";
  const std::string algo = algo_label(result.config);
  const std::string alpha = fmt_g9(result.config.instance.tolerance);
  for (const ReplicationResult& rep : result.replications) {
    const MetricSeries& s = rep.series;
    for (std::size_t p = 0; p < s.checkpoints.size(); ++p) {
      out << s.checkpoints[p] << ',' << rep.replication + 1 << ',' << algo << ','
          << alpha << ',' << fmt_g9(s.regret[p]) << ',' << fmt_g9(s.r_regret[p]) << ','
          << fmt_g9(s.violation_real[p]) << ',' << fmt_g9(s.violation_floor[p]) << '\n';
    }
  }
  const MetricSeries& m = result.mean;
  for (std::size_t p = 0; p < m.checkpoints.size(); ++p) {
    out << m.checkpoints[p] << ",mean," << algo << ',' << alpha << ','
        << fmt_g9(m.regret[p]) << ',' << fmt_g9(m.r_regret[p]) << ','
        << fmt_g9(m.violation_real[p]) << ',' << fmt_g9(m.violation_floor[p]) << '\n';
  }
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "alpha,reps,regret_mean,regret_std,regret_se,r_regret_mean,r_regret_std,"
         "viol_real_mean,viol_real_max,viol_floor_mean,viol_floor_max\n";
  for (const SweepRow& row : result.rows) {
    out << fmt_g9(row.alpha) << ',' << row.replications << ','
        << fmt_g9(row.regret_mean) << ',' << fmt_g9(row.regret_std) << ','
        << fmt_g9(row.regret_se) << ',' << fmt_g9(row.r_regret_mean) << ','
        << fmt_g9(row.r_regret_std) << ',' << fmt_g9(row.viol_real_mean) << ','
        << fmt_g9(row.viol_real_max) << ',' << fmt_g9(row.viol_floor_mean) << ','
        << fmt_g9(row.viol_floor_max) << '\n';
  }
}

void write_thresholds_csv(const SweepResult& result, std::ostream& out) {
  out << "arm,quota,gap,alpha_threshold\n";
  if (!result.has_thresholds) {
    return;
  }
  const FairMabInstance& inst = result.config.instance;
  const GapVector gap = gaps(inst);
  for (std::size_t i = 0; i < inst.arms; ++i) {
    out << i + 1 << ',' << fmt_g9(inst.quotas[i]) << ',' << fmt_g9(gap.deltas[i]) << ','
        << fmt_g9(result.thresholds[i]) << '\n';
  }
}

void write_bounds_csv(const BoundReport& report, const FairMabInstance& instance,
                      std::uint64_t horizon, std::ostream& out) {
  out << "quantity,arm,value\n";
  out << "horizon,," << horizon << '\n';
  out << "fair_ucb_rregret_bound,," << fmt_g9(report.fair_ucb_rregret_bound) << '\n';
  out << "ucb_regret_bound,," << fmt_g9(report.ucb_regret_bound) << '\n';
  out << "alpha_regret_bound,," << fmt_g9(report.alpha_regret_bound) << '\n';
  out << "distribution_free_bound,," << fmt_g9(report.distribution_free_bound) << '\n';
  for (const std::size_t arm : report.s_set) {
    out << "s_set_member," << arm + 1 << ",1\n";
  }
  for (std::size_t i = 0; i < instance.arms; ++i) {
    out << "alpha_threshold," << i + 1 << ',' << fmt_g9(report.alpha_threshold[i])
        << '\n';
  }
}

void write_manifest(const ExperimentConfig& config, std::ostream& out) {
  out << "fairmab-manifest v1\n";
  out << "version=" << kVersion << '\n';
  out << "preset=" << config.preset << '\n';
  out << "algo=" << config.algo << '\n';
  out << "learner=" << (config.algo == "t-fair-ucb" ? "" : config.learner) << '\n';
  out << "arms=" << config.instance.arms << '\n';
  out << "means=" << join_exact(config.instance.means) << '\n';
  out << "quotas=" << join_exact(config.instance.quotas) << '\n';
  out << "alpha=" << fmt_exact(config.instance.tolerance) << '\n';
  out << "horizon=" << config.horizon << '\n';
  out << "alpha_sweep=" << join_exact(config.alpha_sweep) << '\n';
  out << "seed=" << config.seed << '\n';
  out << "replications=" << config.replications << '\n';
  out << "checkpoints=" << config.checkpoints << '\n';
  out << "profile=" << config.profile << '\n';
  out << "audit=" << (config.audit ? "true" : "false") << '\n';
  out << "traces=" << (config.emit_traces ? "true" : "false") << '\n';
  out << "out=" << config.out_dir << '\n';
}

void write_audit_summary(const SeriesResult& result, std::ostream& out) {
  std::size_t failures = 0;
  for (const ReplicationResult& rep : result.replications) {
    out << "rep " << rep.replication + 1 << " seed " << rep.seed << ": ";
    if (!rep.audited) {
      out << "not audited\n";
      continue;
    }
    out << format_audit(rep.audit) << '\n';
    if (!rep.audit.passed) {
      ++failures;
    }
  }
  out << "overall=" << (failures == 0 ? "pass" : "fail")
      << " replications=" << result.replications.size() << " failures=" << failures
      << '\n';
}

namespace {

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Error::Code::ParseError, "cannot open " + path.string() + " for writing");
  }
  writer(out);
  out.flush();
  if (!out) {
    throw Error(Error::Code::ParseError, "failed writing " + path.string());
  }
}

}  // namespace

int run_experiment(const ExperimentConfig& config, std::ostream& log) {
  const ExperimentConfig cfg = finalize_config(config);
  const std::filesystem::path out_dir(cfg.out_dir);
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "manifest.txt",
             [&](std::ostream& os) { write_manifest(cfg, os); });

  if (!cfg.alpha_sweep.empty()) {
    const SweepResult result = run_alpha_sweep(cfg);
    write_file(out_dir / "alpha_sweep.csv",
               [&](std::ostream& os) { write_sweep_csv(result, os); });
    write_file(out_dir / "alpha_thresholds.csv",
               [&](std::ostream& os) { write_thresholds_csv(result, os); });
    log << "alpha sweep: " << result.rows.size() << " grid points, "
        << cfg.replications << " replications each, horizon " << cfg.horizon << '\n';
    if (result.has_thresholds) {
      log << "predicted knee: " << fmt_g9(result.knee) << '\n';
    }
    log << "wrote " << (out_dir / "alpha_sweep.csv").string() << '\n';
    return 0;
  }

  const SeriesResult result = run_series(cfg);
  write_file(out_dir / "metrics.csv",
             [&](std::ostream& os) { write_metrics_csv(result, os); });
  const std::size_t last = result.mean.checkpoints.size() - 1;
  log << algo_label(cfg) << " on " << cfg.instance.arms << " arms, horizon "
      << cfg.horizon << ", " << cfg.replications << " replications\n";
  log << "final mean regret " << fmt_g9(result.mean.regret[last]) << ", r-regret "
      << fmt_g9(result.mean.r_regret[last]) << '\n';
  log << "wrote " << (out_dir / "metrics.csv").string() << '\n';

  if (cfg.audit) {
    write_file(out_dir / "audit.txt",
               [&](std::ostream& os) { write_audit_summary(result, os); });
    log << "audit: " << (result.audit_failures == 0 ? "pass" : "FAIL") << " ("
        << result.audit_failures << " of " << cfg.replications << " failed)\n";
    if (result.audit_failures > 0) {
      return 2;
    }
  }
  return 0;
}

}  // namespace fairmab
