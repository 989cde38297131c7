#include "dpfuzz/wire.hpp"

#include <charconv>
#include <iterator>
#include <optional>
#include <sstream>
#include <vector>

namespace dpfuzz {
namespace {

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
                    c == '.' || c == ':';
    if (!ok) return false;
  }
  return true;
}

std::optional<std::uint64_t> parse_u64(std::string_view s) {
  if (s.empty()) return std::nullopt;
  for (char c : s)
    if (c < '0' || c > '9') return std::nullopt;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const auto sp = line.find(' ', pos);
    out.push_back(line.substr(pos, sp == std::string_view::npos ? std::string_view::npos : sp - pos));
    if (sp == std::string_view::npos) break;
    pos = sp + 1;
  }
  return out;
}

enum class Section { edges, counts, done };

// Shared driver. In strict mode every violation throws; in lenient mode the
// fragment parsed so far is returned instead.
TraceFragment parse(std::string_view text, bool strict) {
  const auto lines = split_lines(text);
  TraceFragment out;
  std::vector<std::uint64_t> edges;
  auto fail = [&](std::size_t line, const std::string& msg) -> bool {
    if (strict) throw ParseError(line, msg);
    return false;
  };
  auto finish = [&]() {
    out.edges = make_edge_set(std::move(edges));
    return out;
  };

  if (lines.empty() || lines[0] != kTraceHeader) {
    fail(1, "missing DPFUZZ1 header");
    return finish();
  }
  Section section = Section::edges;
  bool have_cost = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto fields = split_fields(lines[i]);
    if (section == Section::done) {
      fail(lineno, "content after COST footer");
      return finish();
    }
    const auto& kw = fields[0];
    if (kw == "EDGE") {
      if (section != Section::edges) {
        fail(lineno, "EDGE after COUNT section");
        return finish();
      }
      const auto v = fields.size() == 2 ? parse_u64(fields[1]) : std::nullopt;
      if (!v) {
        fail(lineno, "malformed EDGE directive");
        return finish();
      }
      edges.push_back(*v);
    } else if (kw == "COUNT") {
      section = Section::counts;
      const auto v = fields.size() == 3 ? parse_u64(fields[2]) : std::nullopt;
      if (!v || !valid_name(fields[1])) {
        fail(lineno, "malformed COUNT directive");
        return finish();
      }
      if (!out.counts.emplace(std::string(fields[1]), *v).second) {
        fail(lineno, "duplicate COUNT name '" + std::string(fields[1]) + "'");
        return finish();
      }
    } else if (kw == "COST") {
      const auto v = fields.size() == 2 ? parse_u64(fields[1]) : std::nullopt;
      if (!v) {
        fail(lineno, "malformed COST directive");
        return finish();
      }
      out.cost = *v;
      have_cost = true;
      section = Section::done;
    } else {
      fail(lineno, "unknown directive '" + std::string(lines[i]) + "'");
      return finish();
    }
  }
  if (!have_cost) fail(lines.size() + 1, "missing COST footer");
  return finish();
}

}  // namespace

TraceFragment parse_external_trace(std::string_view text) { return parse(text, true); }

TraceFragment parse_external_trace(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse(text, true);
}

TraceFragment parse_partial_trace(std::string_view text) { return parse(text, false); }

std::string write_trace(const TraceFragment& fragment) {
  std::ostringstream os;
  os << kTraceHeader << '\n';
  for (auto e : fragment.edges) os << "EDGE " << e << '\n';
  for (const auto& [name, count] : fragment.counts) os << "COUNT " << name << ' ' << count << '\n';
  os << "COST " << fragment.cost << '\n';
  return os.str();
}

}  // namespace dpfuzz
