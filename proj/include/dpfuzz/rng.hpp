#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace dpfuzz {

// Seedable generator used everywhere randomness is needed.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The std:: distributions are implementation-defined, so every
// draw below is derived from raw engine output to keep goldens portable
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). Requires bound > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  // Uniform double in [0, 1) with 53 bits of precision.
  double unit();

  bool chance(double p) { return unit() < p; }

  // Index drawn with probability proportional to weights[i]. Weights must be
  // non-negative with a positive sum.
  std::size_t weighted(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

}  // namespace dpfuzz
