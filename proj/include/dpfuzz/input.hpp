#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dpfuzz {

using Bytes = std::vector<std::uint8_t>;

// Raised when an input does not belong to its target's input domain.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CategoricalRange {
  std::vector<std::string> values;
};
struct IntegerRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};
struct RealRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct ParamDomain {
  std::string name;
  std::variant<CategoricalRange, IntegerRange, RealRange> range;
};

using ParamValue = std::variant<std::string, std::int64_t, double>;

struct DataShape {
  std::uint64_t samples = 0;
  std::uint64_t features = 0;
  bool operator==(const DataShape&) const = default;
};

struct ShapeRange {
  std::uint64_t samples_lo = 1, samples_hi = 1;
  std::uint64_t features_lo = 1, features_hi = 1;
};

// A typed parameter record. Fields keep their declaration order.
struct ParamRecord {
  std::vector<std::pair<std::string, ParamValue>> fields;
  std::optional<DataShape> shape;
  // Integer field that carries the size when there is no shape.
  std::optional<std::string> size_field;

  const ParamValue* find(const std::string& name) const;
  ParamValue* find(const std::string& name);
  bool operator==(const ParamRecord&) const = default;
};

struct TargetInput {
  std::variant<Bytes, ParamRecord> payload;

  TargetInput() = default;
  TargetInput(Bytes bytes) : payload(std::move(bytes)) {}  // NOLINT(google-explicit-constructor)
  TargetInput(ParamRecord record) : payload(std::move(record)) {}  // NOLINT(google-explicit-constructor)

  bool is_bytes() const { return std::holds_alternative<Bytes>(payload); }
  const Bytes& bytes() const { return std::get<Bytes>(payload); }
  Bytes& bytes() { return std::get<Bytes>(payload); }
  const ParamRecord& record() const { return std::get<ParamRecord>(payload); }
  ParamRecord& record() { return std::get<ParamRecord>(payload); }

  bool operator==(const TargetInput&) const = default;
};

struct ByteDomain {
  std::size_t min_len = 0;
  std::size_t max_len = 64;
};

struct RecordDomain {
  std::vector<ParamDomain> params;
  std::optional<ShapeRange> shape;
  std::optional<std::string> size_field;
};

using InputDomain = std::variant<ByteDomain, RecordDomain>;

// Size measure |x|: byte length, samples x features, or the declared scalar
// size field.
std::uint64_t input_size(const TargetInput& input);

// Throws InputError naming the first violated constraint.
void validate(const InputDomain& domain, const TargetInput& input);
bool within(const InputDomain& domain, const TargetInput& input);

// Projects an input back into its domain: truncates or zero-pads byte
// payloads and clamps every typed value into its declared range.
TargetInput clamp(const InputDomain& domain, TargetInput input);

std::string to_hex(const Bytes& bytes);
Bytes from_hex(const std::string& hex);

}  // namespace dpfuzz
