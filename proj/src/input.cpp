#include "dpfuzz/input.hpp"

#include <algorithm>
#include <cmath>

namespace dpfuzz {

const ParamValue* ParamRecord::find(const std::string& name) const {
  for (const auto& [key, value] : fields)
    if (key == name) return &value;
  return nullptr;
}

ParamValue* ParamRecord::find(const std::string& name) {
  for (auto& [key, value] : fields)
    if (key == name) return &value;
  return nullptr;
}

std::uint64_t input_size(const TargetInput& input) {
  if (input.is_bytes()) return input.bytes().size();
  const auto& rec = input.record();
  if (rec.shape) return rec.shape->samples * rec.shape->features;
  if (rec.size_field) {
    if (const auto* v = rec.find(*rec.size_field)) {
      if (const auto* i = std::get_if<std::int64_t>(v)) return *i < 0 ? 0 : static_cast<std::uint64_t>(*i);
    }
  }
  return 0;
}

namespace {

std::string check_value(const ParamDomain& dom, const ParamValue& value) {
  return std::visit(
      [&](const auto& range) -> std::string {
        using R = std::decay_t<decltype(range)>;
        if constexpr (std::is_same_v<R, CategoricalRange>) {
          const auto* s = std::get_if<std::string>(&value);
          if (!s) return "field '" + dom.name + "' must be categorical";
          if (std::find(range.values.begin(), range.values.end(), *s) == range.values.end())
            return "field '" + dom.name + "' has value '" + *s + "' outside its category set";
        } else if constexpr (std::is_same_v<R, IntegerRange>) {
          const auto* i = std::get_if<std::int64_t>(&value);
          if (!i) return "field '" + dom.name + "' must be an integer";
          if (*i < range.lo || *i > range.hi) return "field '" + dom.name + "' out of range";
        } else {
          const auto* d = std::get_if<double>(&value);
          if (!d) return "field '" + dom.name + "' must be real";
          if (!std::isfinite(*d) || *d < range.lo || *d > range.hi)
            return "field '" + dom.name + "' out of range";
        }
        return {};
      },
      dom.range);
}

std::string violation(const InputDomain& domain, const TargetInput& input) {
  if (const auto* bd = std::get_if<ByteDomain>(&domain)) {
    if (!input.is_bytes()) return "expected a byte payload";
    const auto n = input.bytes().size();
    if (n < bd->min_len || n > bd->max_len)
      return "byte length " + std::to_string(n) + " outside [" + std::to_string(bd->min_len) + ", " +
             std::to_string(bd->max_len) + "]";
    return {};
  }
  const auto& rd = std::get<RecordDomain>(domain);
  if (input.is_bytes()) return "expected a parameter record";
  const auto& rec = input.record();
  if (rec.fields.size() != rd.params.size()) return "parameter count mismatch";
  for (std::size_t i = 0; i < rd.params.size(); ++i) {
    if (rec.fields[i].first != rd.params[i].name) return "unexpected field '" + rec.fields[i].first + "'";
    if (auto msg = check_value(rd.params[i], rec.fields[i].second); !msg.empty()) return msg;
  }
  if (rd.shape.has_value() != rec.shape.has_value()) return "data shape presence mismatch";
  if (rd.shape) {
    const auto& s = *rec.shape;
    if (s.samples < rd.shape->samples_lo || s.samples > rd.shape->samples_hi) return "samples out of range";
    if (s.features < rd.shape->features_lo || s.features > rd.shape->features_hi) return "features out of range";
  }
  return {};
}

}  // namespace

void validate(const InputDomain& domain, const TargetInput& input) {
  if (auto msg = violation(domain, input); !msg.empty()) throw InputError(msg);
}

bool within(const InputDomain& domain, const TargetInput& input) { return violation(domain, input).empty(); }

TargetInput clamp(const InputDomain& domain, TargetInput input) {
  if (const auto* bd = std::get_if<ByteDomain>(&domain)) {
    if (!input.is_bytes()) throw InputError("expected a byte payload");
    auto& b = input.bytes();
    if (b.size() > bd->max_len) b.resize(bd->max_len);
    if (b.size() < bd->min_len) b.resize(bd->min_len, 0);
    return input;
  }
  const auto& rd = std::get<RecordDomain>(domain);
  if (input.is_bytes()) throw InputError("expected a parameter record");
  auto& rec = input.record();
  for (const auto& dom : rd.params) {
    auto* value = rec.find(dom.name);
    if (!value) throw InputError("missing field '" + dom.name + "'");
    std::visit(
        [&](const auto& range) {
          using R = std::decay_t<decltype(range)>;
          if constexpr (std::is_same_v<R, CategoricalRange>) {
            const auto* s = std::get_if<std::string>(value);
            if (!s || std::find(range.values.begin(), range.values.end(), *s) == range.values.end())
              *value = range.values.front();
          } else if constexpr (std::is_same_v<R, IntegerRange>) {
            std::int64_t v = 0;
            if (const auto* i = std::get_if<std::int64_t>(value)) v = *i;
            else if (const auto* d = std::get_if<double>(value)) v = static_cast<std::int64_t>(std::llround(*d));
            *value = std::clamp(v, range.lo, range.hi);
          } else {
            double v = 0.0;
            if (const auto* d = std::get_if<double>(value)) v = *d;
            else if (const auto* i = std::get_if<std::int64_t>(value)) v = static_cast<double>(*i);
            if (!std::isfinite(v)) v = range.lo;
            *value = std::clamp(v, range.lo, range.hi);
          }
        },
        dom.range);
  }
  if (rd.shape) {
    if (!rec.shape) rec.shape = DataShape{rd.shape->samples_lo, rd.shape->features_lo};
    rec.shape->samples = std::clamp(rec.shape->samples, rd.shape->samples_lo, rd.shape->samples_hi);
    rec.shape->features = std::clamp(rec.shape->features, rd.shape->features_lo, rd.shape->features_hi);
  } else {
    rec.shape.reset();
  }
  rec.size_field = rd.size_field;
  return input;
}

std::string to_hex(const Bytes& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Bytes from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw InputError("hex payload has odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw InputError(std::string("invalid hex digit '") + c + "'");
  };
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  return out;
}

}  // namespace dpfuzz
