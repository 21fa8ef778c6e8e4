#pragma once

#include <filesystem>
#include <iosfwd>

#include "fairmab/fairlearn.hpp"

namespace fairmab {

// Plain-text trace format, one file per run:
//
//   fairmab-trace v1
//   algo=fair-learn:ucb1
//   seed=42
//   arms=3
//   means=0.7,0.5,0.4
//   quotas=0.2,0.3,0.25
//   alpha=0
//   horizon=200
//   events=200
//   t,arm,reward
//   1,1,1
//   ...
//
// Arms are numbered from 1 in the file. Floating-point fields round-trip
// exactly. Checkpoints and the fairness maxima are not stored; read_trace
// recomputes the maxima from the events and leaves a single final-round
// checkpoint on the result.
void write_trace(const RunTrace& trace, std::ostream& out);
void write_trace_file(const RunTrace& trace, const std::filesystem::path& path);

// Parses and structurally validates a trace: header fields present and
// consistent, instance valid, events contiguous from round 1, arms in
// range, rewards 0/1. Structural damage throws TraceCorrupt; unreadable
// syntax throws ParseError with a line number.
RunTrace read_trace(std::istream& in);
RunTrace read_trace_file(const std::filesystem::path& path);

}  // namespace fairmab
