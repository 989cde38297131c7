#include "dpfuzz/trace.hpp"

#include <algorithm>

namespace dpfuzz {

EdgeSet make_edge_set(std::vector<std::uint64_t> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

PathId path_id(std::span<const std::uint64_t> edges) {
  EdgeSet sorted = make_edge_set({edges.begin(), edges.end()});
  std::uint64_t h = kFnvOffsetBasis;
  for (std::uint64_t e : sorted) {
    for (int i = 0; i < 8; ++i) {
      h ^= (e >> (8 * i)) & 0xffU;
      h *= kFnvPrime;
    }
  }
  return PathId{h};
}

const char* to_string(ExecStatus status) {
  switch (status) {
    case ExecStatus::ok: return "ok";
    case ExecStatus::timeout: return "timeout";
    case ExecStatus::crash: return "crash";
  }
  return "unknown";
}

std::uint64_t edge_id(std::size_t from, std::size_t to) {
  const std::uint64_t src = from == kEntryBlock ? 0 : from + 1;
  return src << 32 | (to + 1);
}

Tracer::Tracer(std::span<const Block> blocks, std::optional<Clock::time_point> deadline)
    : blocks_(blocks), deadline_(deadline), hits_(blocks.size(), 0) {
  if (blocks.size() > kMaxBlocks) throw std::invalid_argument("Tracer: too many blocks");
}

EdgeSet Tracer::edges() const {
  EdgeSet out;
  for (std::size_t bit = 0; bit < edges_.size(); ++bit) {
    if (!edges_.test(bit)) continue;
    const std::size_t prev = bit / 64;
    const std::size_t cur = bit % 64;
    out.push_back(edge_id(prev == 0 ? kEntryBlock : prev - 1, cur));
  }
  std::sort(out.begin(), out.end());
  return out;
}

InternalCounts Tracer::counts() const {
  InternalCounts out;
  for (std::size_t i = 0; i < hits_.size(); ++i)
    if (hits_[i] > 0) out[blocks_[i].name] += hits_[i];
  return out;
}

void Tracer::check_deadline() const {
  if (Clock::now() > *deadline_) throw DeadlineExceeded();
}

}  // namespace dpfuzz
