#include "dpfuzz/harness.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dpfuzz/wire.hpp"

namespace dpfuzz {

const char* to_string(CostMode mode) { return mode == CostMode::lines ? "lines" : "time"; }

CostMode cost_mode_from_string(const std::string& s) {
  if (s == "lines") return CostMode::lines;
  if (s == "time") return CostMode::time;
  throw std::invalid_argument("unknown cost mode '" + s + "'");
}

void TargetSpec::check() const {
  if (!(timeout_secs > 0)) throw std::invalid_argument("timeout must be positive");
  if (const auto* bd = std::get_if<ByteDomain>(&domain); bd && bd->min_len > bd->max_len)
    throw std::invalid_argument("byte-length bounds require min <= max");
  if (time_repeats == 0) throw std::invalid_argument("time_repeats must be positive");
  if (!builtin && external_cmd.empty()) throw std::invalid_argument("target has neither a built-in body nor a command");
}

TargetSpec builtin_spec(const std::string& name) {
  const auto* target = find_builtin(name);
  if (!target) throw std::invalid_argument("unknown target '" + name + "'");
  TargetSpec spec;
  spec.name = target->name;
  spec.domain = target->domain;
  spec.builtin = target;
  return spec;
}

TargetSpec external_spec(const std::string& command, ByteDomain domain) {
  TargetSpec spec;
  spec.name = "external";
  spec.domain = domain;
  spec.external_cmd = command;
  return spec;
}

std::uint64_t measure_size(const TargetSpec& spec, const TargetInput& input) {
  switch (spec.size_measure) {
    case SizeMeasure::automatic: return input_size(input);
    case SizeMeasure::byte_length: return input.is_bytes() ? input.bytes().size() : 0;
    case SizeMeasure::shape_product: {
      if (input.is_bytes() || !input.record().shape) return 0;
      const auto& s = *input.record().shape;
      return s.samples * s.features;
    }
    case SizeMeasure::scalar_field: {
      if (input.is_bytes()) return 0;
      ParamRecord rec = input.record();
      rec.shape.reset();
      return input_size(TargetInput(std::move(rec)));
    }
  }
  return 0;
}

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Clock::duration as_duration(double secs) {
  return std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(secs));
}

void fill_builtin(const TargetSpec& spec, ExecutionRecord& rec, double& micros) {
  const auto start = Clock::now();
  Tracer tracer(spec.builtin->blocks, start + as_duration(spec.timeout_secs));
  try {
    spec.builtin->body(rec.input, tracer);
  } catch (const DeadlineExceeded& e) {
    rec.status = ExecStatus::timeout;
    rec.detail = e.what();
  } catch (const std::exception& e) {
    rec.status = ExecStatus::crash;
    rec.detail = e.what();
  }
  micros = std::chrono::duration<double, std::micro>(Clock::now() - start).count();
  rec.edges = tracer.edges();
  rec.cost = static_cast<double>(tracer.lines());
  rec.internal_counts = tracer.counts();
}

// Removes the file on scope exit.
struct TempFile {
  std::string path;
  int fd = -1;
  explicit TempFile(const char* stem) {
    const char* dir = std::getenv("TMPDIR");
    std::string pattern = std::string(dir && *dir ? dir : "/tmp") + "/" + stem + "-XXXXXX";
    std::vector<char> buf(pattern.begin(), pattern.end());
    buf.push_back('\0');
    fd = ::mkstemp(buf.data());
    if (fd < 0) throw std::runtime_error(std::string("mkstemp failed: ") + std::strerror(errno));
    path = buf.data();
  }
  ~TempFile() {
    if (fd >= 0) ::close(fd);
    ::unlink(path.c_str());
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
};

struct ExternalOutcome {
  std::string trace;
  bool timed_out = false;
  bool signaled = false;
  int exit_code = 0;
  double micros = 0.0;
};

ExternalOutcome run_external(const TargetSpec& spec, const Bytes& input) {
  TempFile in("dpfuzz-in");
  TempFile trace("dpfuzz-trace");
  for (std::size_t off = 0; off < input.size();) {
    const auto n = ::write(in.fd, input.data() + off, input.size() - off);
    if (n < 0) throw std::runtime_error("writing input file failed");
    off += static_cast<std::size_t>(n);
  }
  ::lseek(in.fd, 0, SEEK_SET);

  const auto start = Clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) throw std::runtime_error("fork failed");
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(in.fd, STDIN_FILENO);
    const int devnull = ::open("/dev/null", O_WRONLY);
    if (devnull >= 0) ::dup2(devnull, STDOUT_FILENO);
    ::setenv("DPFUZZ_TRACE_FILE", trace.path.c_str(), 1);
    ::execl("/bin/sh", "sh", "-c", spec.external_cmd.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::setpgid(pid, pid);

  ExternalOutcome out;
  const auto deadline = start + as_duration(spec.timeout_secs);
  int status = 0;
  auto pause = std::chrono::microseconds(20);
  while (true) {
    const pid_t r = ::waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) throw std::runtime_error("waitpid failed");
    if (Clock::now() > deadline) {
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      out.timed_out = true;
      break;
    }
    std::this_thread::sleep_for(pause);
    pause = std::min(pause * 2, std::chrono::microseconds(2000));
  }
  out.micros = std::chrono::duration<double, std::micro>(Clock::now() - start).count();
  if (!out.timed_out) {
    out.signaled = WIFSIGNALED(status);
    out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::ifstream f(trace.path, std::ios::binary);
  out.trace.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  return out;
}

void fill_external(const TargetSpec& spec, ExecutionRecord& rec, double& micros) {
  const auto outcome = run_external(spec, rec.input.bytes());
  micros = outcome.micros;
  TraceFragment frag;
  if (outcome.timed_out) {
    rec.status = ExecStatus::timeout;
    rec.detail = "execution deadline exceeded";
    frag = parse_partial_trace(outcome.trace);
  } else if (outcome.signaled || outcome.exit_code != 0) {
    rec.status = ExecStatus::crash;
    rec.detail = outcome.signaled ? "terminated by signal" : "exit code " + std::to_string(outcome.exit_code);
    frag = parse_partial_trace(outcome.trace);
  } else {
    try {
      frag = parse_external_trace(outcome.trace);
    } catch (const ParseError& e) {
      rec.status = ExecStatus::crash;
      rec.detail = std::string("trace rejected: ") + e.what();
      frag = parse_partial_trace(outcome.trace);
    }
  }
  rec.edges = frag.edges;
  rec.internal_counts = frag.counts;
  rec.cost = static_cast<double>(frag.cost);
}

}  // namespace

ExecutionRecord run_instrumented(const TargetSpec& spec, const TargetInput& input) {
  validate(spec.domain, input);
  if (!spec.builtin && !input.is_bytes()) throw InputError("external targets take byte payloads");

  const unsigned runs = spec.cost_mode == CostMode::time ? spec.time_repeats : 1;
  ExecutionRecord rec;
  std::vector<double> timings;
  for (unsigned r = 0; r < runs; ++r) {
    ExecutionRecord attempt;
    attempt.input = input;
    double micros = 0.0;
    if (spec.builtin) fill_builtin(spec, attempt, micros);
    else fill_external(spec, attempt, micros);
    timings.push_back(micros);
    if (r == 0) rec = std::move(attempt);
    else if (attempt.status != ExecStatus::ok && rec.status == ExecStatus::ok) {
      rec.status = attempt.status;
      rec.detail = attempt.detail;
    }
    if (rec.status != ExecStatus::ok) break;
  }
  rec.size = measure_size(spec, input);
  rec.path = path_id(rec.edges);
  if (spec.cost_mode == CostMode::time) rec.cost = median(timings);
  return rec;
}

}  // namespace dpfuzz
