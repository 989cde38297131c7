#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dpfuzz/trace.hpp"

namespace dpfuzz {

// Text trace emitted by external targets:
//
//   DPFUZZ1
//   EDGE <u64>            (zero or more)
//   COUNT <name> <u64>    (zero or more, after every EDGE)
//   COST <u64>            (exactly one, last)
//
// Names match [A-Za-z0-9_.:]+. Lines end with '\n'; a single trailing
// newline after COST is optional.
inline constexpr std::string_view kTraceHeader = "DPFUZZ1";

struct TraceFragment {
  EdgeSet edges;
  InternalCounts counts;
  std::uint64_t cost = 0;
  bool operator==(const TraceFragment&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

TraceFragment parse_external_trace(std::string_view text);
TraceFragment parse_external_trace(std::istream& in);

// Best-effort parse for traces cut short by a crash or timeout: stops at the
// first malformed line and tolerates a missing COST footer.
TraceFragment parse_partial_trace(std::string_view text);

std::string write_trace(const TraceFragment& fragment);

}  // namespace dpfuzz
