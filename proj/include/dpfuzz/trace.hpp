#pragma once

#include <bitset>
#include <chrono>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpfuzz/input.hpp"

namespace dpfuzz {

struct PathId {
  std::uint64_t value = 0;
  auto operator<=>(const PathId&) const = default;
};

// Sorted, duplicate-free edge identifiers.
using EdgeSet = std::vector<std::uint64_t>;

EdgeSet make_edge_set(std::vector<std::uint64_t> edges);

// 64-bit FNV-1a over the little-endian bytes of the sorted, deduplicated
// edge sequence. The empty set hashes to the FNV offset basis.
PathId path_id(std::span<const std::uint64_t> edges);

inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

using InternalCounts = std::map<std::string, std::uint64_t>;

enum class ExecStatus { ok, timeout, crash };

const char* to_string(ExecStatus status);

struct ExecutionRecord {
  TargetInput input;
  std::uint64_t size = 0;
  EdgeSet edges;
  PathId path;
  double cost = 0.0;
  InternalCounts internal_counts;
  ExecStatus status = ExecStatus::ok;
  std::string detail;  // crash/timeout description
};

// A hand-placed instrumentation point: one basic block of a built-in target.
struct Block {
  const char* name;
  std::uint32_t lines;  // source lines charged per execution of the block
};

inline constexpr std::size_t kMaxBlocks = 63;

// Thrown by a built-in target to signal a crash (the in-process analogue of a
// fatal signal). The tracer keeps whatever was recorded before the throw.
class TargetCrash : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Collects edges, executed-line cost, and per-block hit counts while a
// built-in target runs. Edges are (previous block, current block) pairs.
class Tracer {
 public:
  using Clock = std::chrono::steady_clock;

  explicit Tracer(std::span<const Block> blocks, std::optional<Clock::time_point> deadline = std::nullopt);

  void hit(std::size_t block) {
    cost_ += blocks_[block].lines;
    ++hits_[block];
    edges_.set(prev_ * 64 + block);
    prev_ = block + 1;
    if ((++steps_ & 0x3ff) == 0 && deadline_) check_deadline();
  }

  std::uint64_t lines() const { return cost_; }
  EdgeSet edges() const;
  InternalCounts counts() const;

 private:
  void check_deadline() const;

  std::span<const Block> blocks_;
  std::optional<Clock::time_point> deadline_;
  std::bitset<64 * 64> edges_;
  std::vector<std::uint64_t> hits_;
  std::size_t prev_ = 0;
  std::uint64_t cost_ = 0;
  std::uint64_t steps_ = 0;
};

// Thrown from Tracer::hit once the execution deadline has passed.
class DeadlineExceeded : public std::runtime_error {
 public:
  DeadlineExceeded() : std::runtime_error("execution deadline exceeded") {}
};

// Edge id for the transition from block `from` (kEntryBlock for function
// entry) to block `to`.
inline constexpr std::size_t kEntryBlock = static_cast<std::size_t>(-1);
std::uint64_t edge_id(std::size_t from, std::size_t to);

}  // namespace dpfuzz
