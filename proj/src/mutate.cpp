#include "dpfuzz/mutate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace dpfuzz {
namespace {

constexpr std::uint64_t kMaxBlock = 8;
constexpr std::uint64_t kMaxDelta = 35;

std::size_t pick_width(std::size_t n, Rng& rng) {
  static constexpr std::size_t kWidths[] = {1, 2, 4};
  std::size_t fit = 0;
  while (fit < 3 && kWidths[fit] <= n) ++fit;
  return kWidths[rng.below(fit)];
}

std::uint64_t read_le(const Bytes& b, std::size_t pos, std::size_t width) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(b[pos + i]) << (8 * i);
  return v;
}

void write_le(Bytes& b, std::size_t pos, std::size_t width, std::uint64_t v) {
  for (std::size_t i = 0; i < width; ++i) b[pos + i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::vector<std::uint64_t> interesting_values(std::size_t width) {
  const std::size_t bits = 8 * width;
  const std::uint64_t max = bits == 64 ? ~0ULL : (1ULL << bits) - 1;
  std::vector<std::uint64_t> out{0, 1, max, 1ULL << (bits - 1)};
  for (std::size_t i = 1; i + 1 < bits; ++i) out.push_back(1ULL << i);
  return out;
}

Bytes insert_byte(Bytes b, Rng& rng) {
  const auto pos = rng.below(b.size() + 1);
  b.insert(b.begin() + static_cast<std::ptrdiff_t>(pos), static_cast<std::uint8_t>(rng.below(256)));
  return b;
}

}  // namespace

Bytes mutate_bytes(ByteMutation op, Bytes b, const ByteDomain& domain, Rng& rng) {
  const std::size_t n = b.size();
  const bool degenerate = (n == 0 && op != ByteMutation::byte_insert) || (n < 2 && op == ByteMutation::block_shuffle);
  if (degenerate) op = ByteMutation::byte_insert;

  switch (op) {
    case ByteMutation::bit_flip: {
      const auto pos = rng.below(n);
      b[pos] ^= static_cast<std::uint8_t>(1U << rng.below(8));
      break;
    }
    case ByteMutation::byte_replace: {
      const auto pos = rng.below(n);
      b[pos] ^= static_cast<std::uint8_t>(1 + rng.below(255));
      break;
    }
    case ByteMutation::byte_insert:
      b = insert_byte(std::move(b), rng);
      break;
    case ByteMutation::byte_delete:
      b.erase(b.begin() + static_cast<std::ptrdiff_t>(rng.below(n)));
      break;
    case ByteMutation::block_duplicate: {
      const auto start = rng.below(n);
      const auto len = 1 + rng.below(std::min<std::uint64_t>(n - start, kMaxBlock));
      const Bytes block(b.begin() + static_cast<std::ptrdiff_t>(start),
                        b.begin() + static_cast<std::ptrdiff_t>(start + len));
      const auto at = rng.below(n + 1);
      b.insert(b.begin() + static_cast<std::ptrdiff_t>(at), block.begin(), block.end());
      break;
    }
    case ByteMutation::block_shuffle: {
      const auto start = rng.below(n - 1);
      const auto len = 2 + rng.below(std::min<std::uint64_t>(n - start, kMaxBlock) - 1);
      for (std::uint64_t i = len - 1; i > 0; --i) std::swap(b[start + i], b[start + rng.below(i + 1)]);
      break;
    }
    case ByteMutation::arithmetic: {
      const auto width = pick_width(n, rng);
      const auto pos = rng.below(n - width + 1);
      const auto delta = 1 + rng.below(kMaxDelta);
      auto v = read_le(b, pos, width);
      v = rng.chance(0.5) ? v + delta : v - delta;
      write_le(b, pos, width, v);
      break;
    }
    case ByteMutation::interesting_value: {
      const auto width = pick_width(n, rng);
      const auto pos = rng.below(n - width + 1);
      const auto values = interesting_values(width);
      write_le(b, pos, width, values[rng.below(values.size())]);
      break;
    }
  }
  if (b.size() > domain.max_len) b.resize(domain.max_len);
  if (b.size() < domain.min_len) b.resize(domain.min_len, 0);
  return b;
}

namespace {

bool is_numeric(const ParamDomain& d) { return !std::holds_alternative<CategoricalRange>(d.range); }
bool is_categorical(const ParamDomain& d) { return std::holds_alternative<CategoricalRange>(d.range); }

std::vector<std::size_t> fields_where(const RecordDomain& domain, bool (*pred)(const ParamDomain&)) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < domain.params.size(); ++i)
    if (pred(domain.params[i])) out.push_back(i);
  return out;
}

ParamValue random_value(const ParamDomain& d, Rng& rng) {
  return std::visit(
      [&](const auto& r) -> ParamValue {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, CategoricalRange>) return r.values[rng.below(r.values.size())];
        else if constexpr (std::is_same_v<R, IntegerRange>) return rng.between(r.lo, r.hi);
        else return r.lo + rng.unit() * (r.hi - r.lo);
      },
      d.range);
}

double as_double(const ParamValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return 0.0;
}

void set_numeric(ParamValue& slot, const ParamDomain& d, double value) {
  if (std::holds_alternative<IntegerRange>(d.range)) slot = static_cast<std::int64_t>(std::llround(value));
  else slot = value;
}

std::pair<double, double> numeric_bounds(const ParamDomain& d) {
  if (const auto* r = std::get_if<IntegerRange>(&d.range))
    return {static_cast<double>(r->lo), static_cast<double>(r->hi)};
  const auto& r = std::get<RealRange>(d.range);
  return {r.lo, r.hi};
}

void random_reset(ParamRecord& rec, const RecordDomain& domain, Rng& rng) {
  const std::size_t slots = domain.params.size() + (domain.shape ? 1 : 0);
  if (slots == 0) return;
  const auto pick = rng.below(slots);
  if (pick < domain.params.size()) {
    rec.fields[pick].second = random_value(domain.params[pick], rng);
    return;
  }
  const auto& s = *domain.shape;
  rec.shape = DataShape{static_cast<std::uint64_t>(rng.between(static_cast<std::int64_t>(s.samples_lo),
                                                               static_cast<std::int64_t>(s.samples_hi))),
                        static_cast<std::uint64_t>(rng.between(static_cast<std::int64_t>(s.features_lo),
                                                               static_cast<std::int64_t>(s.features_hi)))};
}

}  // namespace

ParamRecord mutate_record(RecordMutation op, ParamRecord rec, const RecordDomain& domain, Rng& rng,
                          const ParamRecord* partner) {
  rec = clamp(domain, TargetInput(std::move(rec))).record();
  const auto categorical = fields_where(domain, is_categorical);
  const auto numeric = fields_where(domain, is_numeric);

  bool fallback = false;
  switch (op) {
    case RecordMutation::categorical_resample: {
      if (categorical.empty()) {
        fallback = true;
        break;
      }
      const auto idx = categorical[rng.below(categorical.size())];
      const auto& values = std::get<CategoricalRange>(domain.params[idx].range).values;
      auto& slot = rec.fields[idx].second;
      std::vector<std::string> others;
      for (const auto& v : values)
        if (v != std::get<std::string>(slot)) others.push_back(v);
      if (!others.empty()) slot = others[rng.below(others.size())];
      break;
    }
    case RecordMutation::numeric_perturb: {
      if (numeric.empty()) {
        fallback = true;
        break;
      }
      const auto idx = numeric[rng.below(numeric.size())];
      const auto& dom = domain.params[idx];
      auto& slot = rec.fields[idx].second;
      const double v = as_double(slot);
      const auto [lo, hi] = numeric_bounds(dom);
      const double jitter = rng.unit() * 0.2 - 0.1;
      double next = v != 0.0 ? v * (1.0 + jitter) : jitter * (hi - lo);
      if (std::holds_alternative<IntegerRange>(dom.range) && std::llround(next) == std::llround(v))
        next = v + (jitter < 0 ? -1.0 : 1.0);
      set_numeric(slot, dom, next);
      break;
    }
    case RecordMutation::boundary_value: {
      if (numeric.empty()) {
        fallback = true;
        break;
      }
      const auto idx = numeric[rng.below(numeric.size())];
      const auto [lo, hi] = numeric_bounds(domain.params[idx]);
      set_numeric(rec.fields[idx].second, domain.params[idx], rng.chance(0.5) ? lo : hi);
      break;
    }
    case RecordMutation::zero_value: {
      if (numeric.empty()) {
        fallback = true;
        break;
      }
      const auto idx = numeric[rng.below(numeric.size())];
      set_numeric(rec.fields[idx].second, domain.params[idx], 0.0);
      break;
    }
    case RecordMutation::field_copy: {
      if (!partner || partner->fields.size() != rec.fields.size() || rec.fields.empty()) {
        fallback = true;
        break;
      }
      const auto idx = rng.below(rec.fields.size());
      rec.fields[idx].second = partner->fields[idx].second;
      break;
    }
    case RecordMutation::random_reset:
      fallback = true;
      break;
    case RecordMutation::shape_increment:
    case RecordMutation::shape_decrement: {
      if (!rec.shape) {
        fallback = true;
        break;
      }
      auto& dim = rng.chance(0.5) ? rec.shape->samples : rec.shape->features;
      if (op == RecordMutation::shape_increment) ++dim;
      else if (dim > 0) --dim;
      break;
    }
  }
  if (fallback) random_reset(rec, domain, rng);
  return clamp(domain, TargetInput(std::move(rec))).record();
}

TargetInput mutate(const TargetInput& input, const InputDomain& domain, Rng& rng, const TargetInput* partner) {
  if (const auto* bd = std::get_if<ByteDomain>(&domain)) {
    const auto op = static_cast<ByteMutation>(rng.below(kMutationOperators));
    return mutate_bytes(op, input.bytes(), *bd, rng);
  }
  const auto& rd = std::get<RecordDomain>(domain);
  const auto op = static_cast<RecordMutation>(rng.below(kMutationOperators));
  const ParamRecord* p = partner && !partner->is_bytes() ? &partner->record() : nullptr;
  return mutate_record(op, input.record(), rd, rng, p);
}

Bytes splice(const Bytes& a, std::size_t cut_a, const Bytes& b, std::size_t cut_b) {
  cut_a = std::min(cut_a, a.size());
  cut_b = std::min(cut_b, b.size());
  Bytes out(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(cut_a));
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(cut_b), b.end());
  return out;
}

TargetInput crossover(const TargetInput& a, const TargetInput& b, const InputDomain& domain, Rng& rng) {
  if (a.is_bytes() != b.is_bytes()) throw InputError("crossover: incompatible payload kinds");
  if (a.is_bytes()) {
    const auto cut_a = rng.below(a.bytes().size() + 1);
    const auto cut_b = rng.below(b.bytes().size() + 1);
    return clamp(domain, TargetInput(splice(a.bytes(), cut_a, b.bytes(), cut_b)));
  }
  ParamRecord out = a.record();
  const auto& other = b.record();
  if (other.fields.size() != out.fields.size()) throw InputError("crossover: records have different fields");
  for (std::size_t i = 0; i < out.fields.size(); ++i)
    if (rng.chance(0.5)) out.fields[i].second = other.fields[i].second;
  if (rng.chance(0.5)) out.shape = other.shape;
  return clamp(domain, TargetInput(std::move(out)));
}

}  // namespace dpfuzz
