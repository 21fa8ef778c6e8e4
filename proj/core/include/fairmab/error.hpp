#pragma once

#include <stdexcept>
#include <string>

namespace fairmab {

// Single exception type for the whole library; the code enumerates every
// failure mode of the public API so callers and tests can match on it.
class Error : public std::runtime_error {
 public:
  enum class Code {
    TooFewArms,
    MeanOutOfRange,
    QuotaOutOfRange,
    QuotaSumExceeded,
    NegativeAlpha,
    MalformedInstance,
    IndexOutOfRange,
    InvalidCount,
    HorizonTooShort,
    DegenerateGaps,
    CheckpointMissing,
    TraceCorrupt,
    ParseError,
    UnknownPreset,
  };

  Error(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

}  // namespace fairmab
