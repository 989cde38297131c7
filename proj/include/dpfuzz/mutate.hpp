#pragma once

#include <array>
#include <cstddef>

#include "dpfuzz/input.hpp"
#include "dpfuzz/rng.hpp"

namespace dpfuzz {

enum class ByteMutation {
  bit_flip,
  byte_replace,
  byte_insert,
  byte_delete,
  block_duplicate,
  block_shuffle,
  arithmetic,
  interesting_value,
};

enum class RecordMutation {
  categorical_resample,
  numeric_perturb,
  boundary_value,
  zero_value,
  field_copy,
  random_reset,
  shape_increment,
  shape_decrement,
};

inline constexpr std::size_t kMutationOperators = 8;

// Applies one operator drawn uniformly from the eight for the payload kind,
// then clamps the result into the domain. `partner` feeds the record
// field-copy operator; without one it falls back to a random reset.
TargetInput mutate(const TargetInput& input, const InputDomain& domain, Rng& rng,
                   const TargetInput* partner = nullptr);

// Single-operator variants. Operators that cannot apply to the input (for
// example deleting from an empty payload) fall through to byte_insert.
Bytes mutate_bytes(ByteMutation op, Bytes bytes, const ByteDomain& domain, Rng& rng);
ParamRecord mutate_record(RecordMutation op, ParamRecord record, const RecordDomain& domain, Rng& rng,
                          const ParamRecord* partner = nullptr);

// Prefix of a up to cut_a followed by the suffix of b from cut_b.
Bytes splice(const Bytes& a, std::size_t cut_a, const Bytes& b, std::size_t cut_b);

// Byte payloads: splice at independent random cuts. Records: each field (and
// the shape) comes from b with probability 1/2. Throws InputError when the
// payload kinds differ.
TargetInput crossover(const TargetInput& a, const TargetInput& b, const InputDomain& domain, Rng& rng);

}  // namespace dpfuzz
