#pragma once

#include <string>

#include "dpfuzz/input.hpp"
#include "dpfuzz/targets.hpp"
#include "dpfuzz/trace.hpp"

namespace dpfuzz {

enum class CostMode { lines, time };

const char* to_string(CostMode mode);
CostMode cost_mode_from_string(const std::string& s);

enum class SizeMeasure { automatic, byte_length, shape_product, scalar_field };

// Everything needed to execute one target: which program, its input domain,
// how size and cost are measured, and the execution limits.
struct TargetSpec {
  std::string name;
  InputDomain domain = ByteDomain{};
  SizeMeasure size_measure = SizeMeasure::automatic;
  double timeout_secs = 15 * 60;
  CostMode cost_mode = CostMode::lines;
  unsigned time_repeats = 3;  // wall-clock mode reports the median

  const BuiltinTarget* builtin = nullptr;
  // Shell command for external targets (run through /bin/sh -c). Input bytes
  // go to stdin; the trace is read from $DPFUZZ_TRACE_FILE.
  std::string external_cmd;

  void check() const;  // throws std::invalid_argument
};

TargetSpec builtin_spec(const std::string& name);
TargetSpec external_spec(const std::string& command, ByteDomain domain = ByteDomain{0, 64});

std::uint64_t measure_size(const TargetSpec& spec, const TargetInput& input);

// Executes one input. Malformed inputs throw InputError before execution;
// timeouts and crashes come back as records with the matching status.
ExecutionRecord run_instrumented(const TargetSpec& spec, const TargetInput& input);

}  // namespace dpfuzz
