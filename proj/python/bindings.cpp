#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dpfuzz/cli.hpp"
#include "dpfuzz/fuzz.hpp"
#include "dpfuzz/harness.hpp"
#include "dpfuzz/perf_model.hpp"
#include "dpfuzz/report.hpp"

namespace py = pybind11;
using namespace dpfuzz;

namespace {

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = run_cli(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

py::dict run_target(const std::string& name, const py::bytes& data) {
  const std::string raw = data;
  const auto rec = run_instrumented(builtin_spec(name), Bytes(raw.begin(), raw.end()));
  py::dict d;
  d["path"] = format_path(rec.path);
  d["size"] = rec.size;
  d["cost"] = rec.cost;
  d["status"] = to_string(rec.status);
  d["counts"] = rec.internal_counts;
  d["edges"] = rec.edges.size();
  return d;
}

py::dict fit(const std::vector<std::pair<std::uint64_t, double>>& samples) {
  std::vector<Sample> s;
  for (const auto& [n, c] : samples) s.push_back({n, c});
  const auto f = fit_perf_function(PathId{0}, s);
  py::dict d;
  d["kind"] = to_string(f.kind);
  d["a"] = f.a;
  d["b"] = f.b;
  d["residual"] = f.residual;
  return d;
}

py::dict fuzz_target(const std::string& name, std::uint64_t iterations, std::uint64_t seed, const std::string& policy) {
  const auto spec = builtin_spec(name);
  FuzzConfig c;
  c.seeds = find_builtin(name)->seeds;
  c.max_iterations = iterations;
  c.rng_seed = seed;
  c.policy = policy_from_string(policy);
  FuzzResult r;
  {
    py::gil_scoped_release release;
    r = fuzz(spec, c);
  }
  const auto row = compute_metrics(r, find_builtin(name)->display_name, policy, 0.0, {0.2, 1000.0, seed});
  py::dict d;
  d["row"] = format_row(row);
  d["samples"] = row.samples;
  d["worst_cost"] = row.worst_cost;
  d["paths"] = row.paths;
  d["functions"] = row.functions;
  d["clusters"] = row.clusters;
  d["separated"] = r.clusters.separated_count;
  d["stop_reason"] = r.stop_reason;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Differential performance fuzzing";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("run_cli", &cli, py::arg("args"), "Run a dpfuzz subcommand; returns (exit_code, stdout, stderr).");
  m.def("targets", &benchmark_names);
  m.def("run_target", &run_target, py::arg("name"), py::arg("data"));
  m.def("fit", &fit, py::arg("samples"), "Fit linear or power-law cost to (size, cost) pairs.");
  m.def("fuzz", &fuzz_target, py::arg("target"), py::arg("iterations") = 20000, py::arg("seed") = 0,
        py::arg("policy") = "dpfuzz");
}
