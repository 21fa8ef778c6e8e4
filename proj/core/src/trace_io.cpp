#include "fairmab/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace fairmab {

namespace {

constexpr const char* kMagic = "fairmab-trace v1";

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

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(Error::Code::ParseError,
              "trace line " + std::to_string(line_no) + ": " + what);
}

double parse_double(const std::string& text, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) {
      parse_fail(line_no, "trailing characters in number '" + text + "'");
    }
    return value;
  } catch (const std::invalid_argument&) {
    parse_fail(line_no, "bad number '" + text + "'");
  } catch (const std::out_of_range&) {
    parse_fail(line_no, "number out of range '" + text + "'");
  }
}

std::uint64_t parse_u64(const std::string& text, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    parse_fail(line_no, "bad integer '" + text + "'");
  }
  return value;
}

std::vector<double> parse_double_list(const std::string& text, std::size_t line_no) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    values.push_back(parse_double(item, line_no));
  }
  return values;
}

}  // namespace

void write_trace(const RunTrace& trace, std::ostream& out) {
  out << kMagic << '\n';
  out << "algo=" << trace.algo << '\n';
  out << "seed=" << trace.seed << '\n';
  out << "arms=" << trace.instance.arms << '\n';
  out << "means=" << join_exact(trace.instance.means) << '\n';
  out << "quotas=" << join_exact(trace.instance.quotas) << '\n';
  out << "alpha=" << fmt_exact(trace.instance.tolerance) << '\n';
  // A zero horizon is not a valid instance value, so an empty trace simply
  // omits the field; the reader treats it as optional.
  if (!trace.events.empty()) {
    out << "horizon=" << trace.events.size() << '\n';
  }
  out << "events=" << trace.events.size() << '\n';
  out << "t,arm,reward\n";
  char buf[64];
  for (const TraceEvent& ev : trace.events) {
    std::snprintf(buf, sizeof(buf), "%" PRIu64 ",%u,%u\n", ev.round, ev.arm + 1,
                  static_cast<unsigned>(ev.reward));
    out << buf;
  }
}

void write_trace_file(const RunTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Error::Code::ParseError, "cannot open " + path.string() + " for writing");
  }
  write_trace(trace, out);
  out.flush();
  if (!out) {
    throw Error(Error::Code::ParseError, "failed writing " + path.string());
  }
}

RunTrace read_trace(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line) || line != kMagic) {
    throw Error(Error::Code::TraceCorrupt, "missing trace magic line");
  }
  ++line_no;

  // Header block: key=value until the column header.
  std::map<std::string, std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line == "t,arm,reward") {
      break;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      parse_fail(line_no, "expected key=value, got '" + line + "'");
    }
    header[line.substr(0, eq)] = line.substr(eq + 1);
  }
  if (line != "t,arm,reward") {
    throw Error(Error::Code::TraceCorrupt, "missing event column header");
  }

  for (const char* key : {"algo", "seed", "arms", "means", "quotas", "alpha", "events"}) {
    if (header.find(key) == header.end()) {
      throw Error(Error::Code::TraceCorrupt, std::string("missing header field ") + key);
    }
  }

  RunTrace trace;
  trace.algo = header["algo"];
  trace.seed = parse_u64(header["seed"], line_no);
  FairMabInstance inst;
  inst.arms = static_cast<std::size_t>(parse_u64(header["arms"], line_no));
  inst.means = parse_double_list(header["means"], line_no);
  inst.quotas = parse_double_list(header["quotas"], line_no);
  inst.tolerance = parse_double(header["alpha"], line_no);
  const std::uint64_t expected_events = parse_u64(header["events"], line_no);
  if (header.count("horizon") != 0) {
    inst.horizon = parse_u64(header["horizon"], line_no);
  }
  try {
    trace.instance = validate_instance(inst);
  } catch (const Error& e) {
    throw Error(Error::Code::TraceCorrupt,
                std::string("trace carries an invalid instance: ") + e.what());
  }

  BanditState state(trace.instance.arms);
  trace.events.reserve(expected_events);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      parse_fail(line_no, "expected t,arm,reward, got '" + line + "'");
    }
    const std::uint64_t t = parse_u64(line.substr(0, c1), line_no);
    const std::uint64_t arm_one_based = parse_u64(line.substr(c1 + 1, c2 - c1 - 1), line_no);
    const std::uint64_t reward = parse_u64(line.substr(c2 + 1), line_no);

    if (t != trace.events.size() + 1) {
      throw Error(Error::Code::TraceCorrupt,
                  "event rounds not contiguous at line " + std::to_string(line_no));
    }
    if (arm_one_based < 1 || arm_one_based > trace.instance.arms) {
      throw Error(Error::Code::TraceCorrupt,
                  "arm out of range at line " + std::to_string(line_no));
    }
    if (reward > 1) {
      throw Error(Error::Code::TraceCorrupt,
                  "reward must be 0 or 1 at line " + std::to_string(line_no));
    }
    trace.events.push_back({t, static_cast<std::uint32_t>(arm_one_based - 1),
                            static_cast<std::uint8_t>(reward)});
    state.record(arm_one_based - 1, static_cast<double>(reward));
    for (std::size_t i = 0; i < trace.instance.arms; ++i) {
      trace.max_debt = std::max(trace.max_debt, debt(state, trace.instance, i));
      trace.max_floor_violation = std::max(trace.max_floor_violation,
                                           floor_violation(state, trace.instance, i));
    }
  }
  if (trace.events.size() != expected_events) {
    throw Error(Error::Code::TraceCorrupt,
                "header promises " + std::to_string(expected_events) + " events, file has " +
                    std::to_string(trace.events.size()));
  }

  if (state.round > 0) {
    trace.checkpoints.push_back({state.round, std::move(state)});
  }
  return trace;
}

RunTrace read_trace_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Error::Code::ParseError, "cannot open " + path.string());
  }
  return read_trace(in);
}

}  // namespace fairmab
