#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpfuzz/input.hpp"
#include "dpfuzz/trace.hpp"

namespace dpfuzz {

// A program compiled into the harness with hand-placed probes.
struct BuiltinTarget {
  std::string name;
  std::string display_name;
  std::span<const Block> blocks;
  InputDomain domain;
  std::vector<TargetInput> seeds;
  void (*body)(const TargetInput&, Tracer&);
};

const std::vector<BuiltinTarget>& builtin_targets();
const BuiltinTarget* find_builtin(std::string_view name);

// The ten sorting/searching/tree/graph micro-benchmarks.
const std::vector<std::string>& benchmark_names();

}  // namespace dpfuzz
