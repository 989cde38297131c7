// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dpfuzz/cli.hpp"
#include "dpfuzz/explain.hpp"
#include "dpfuzz/kmeans.hpp"
#include "dpfuzz/perf_model.hpp"
#include "dpfuzz/report.hpp"
#include "dpfuzz/rng.hpp"
#include "dpfuzz/wire.hpp"
#include "oracles.hpp"
#include "trace_corpus.hpp"

using namespace dpfuzz;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "dpfuzz-acceptance";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  if (out) *out = o.str();
  if (code != kExitOk) std::fprintf(stderr, "%s", e.str().c_str());
  return code;
}

std::vector<std::string> fuzz_args(const std::string& target, const fs::path& out) {
  return {"fuzz", "--target", target, "--seed", "7", "--budget-secs", "600", "--cost-mode", "lines", "--out",
          out.string()};
}

bool near_linear(const PerfFunction& f) {
  return f.kind == FunctionKind::linear || f.b <= 1.3;
}

bool superlinear(const PerfFunction& f) { return f.kind == FunctionKind::power_law && f.b >= 1.7; }

std::string describe(const RunRecord& run, double secs) {
  std::ostringstream s;
  s << "separated=" << run.result.clusters.separated_count << " k=" << run.result.clusters.k
    << " functions=" << run.result.functions.size() << " stop=" << run.result.stop_reason << " " << secs << "s";
  return s.str();
}

// 1: insertionX separates a near-linear class from a superlinear one.
Outcome criterion1() {
  const auto t0 = Clock::now();
  if (cli(fuzz_args("insertionx", work_dir() / "insertionx-a")) != kExitOk) return {false, "fuzz failed"};
  const double secs = secs_since(t0);
  const auto run = load_results(work_dir() / "insertionx-a");
  const auto& r = run.result;
  bool lin = false, sup = false;
  for (const auto& f : r.functions) {
    if (!r.clusters.assignment.count(f.path)) continue;
    lin |= near_linear(f);
    sup |= superlinear(f);
  }
  const bool ok = r.clusters.separated_count >= 2 && lin && sup && secs <= 720;
  return {ok, describe(run, secs) + (lin ? " linear" : "") + (sup ? " superlinear" : "")};
}

// 2: quicksort finds at least two clusters and two distinct functions.
Outcome criterion2() {
  const auto t0 = Clock::now();
  if (cli(fuzz_args("quicksort", work_dir() / "quicksort")) != kExitOk) return {false, "fuzz failed"};
  const double secs = secs_since(t0);
  const auto run = load_results(work_dir() / "quicksort");
  const auto row = compute_metrics(run.result, "quicksort", "dpfuzz", secs, {0.2, run.elbow_threshold, 7});
  const bool ok = run.result.clusters.k >= 2 && row.functions >= 2 && secs <= 720;
  return {ok, describe(run, secs) + " #M=" + std::to_string(row.functions) + " #K=" + std::to_string(row.clusters)};
}

// 3: with equal budgets and seeds, dpfuzz finds at least as many functions
// and clusters as slowfuzz.
Outcome criterion3() {
  const auto t0 = Clock::now();
  std::string detail;
  bool ok = true;
  for (const char* target : {"quicksort", "insertionx"}) {
    const auto dir = work_dir() / (std::string("compare-") + target);
    if (cli({"compare", "--target", target, "--seed", "7", "--budget-secs", "300", "--repeat", "3", "--report", "best",
             "--out", dir.string()}) != kExitOk)
      return {false, "compare failed"};
    const auto csv = read_file(dir / "compare.csv");
    std::map<std::string, std::pair<long, long>> mk;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
      std::vector<std::string> cells;
      std::istringstream row(line);
      for (std::string c; std::getline(row, c, ',');) cells.push_back(c);
      if (cells.size() < 7) continue;
      mk[cells[1]] = {std::stol(cells[5]), std::stol(cells[6])};
    }
    const auto d = mk["dpfuzz"], s = mk["slowfuzz"];
    ok &= d.first >= s.first && d.second >= s.second;
    detail += std::string(target) + " M " + std::to_string(d.first) + "/" + std::to_string(s.first) + " K " +
              std::to_string(d.second) + "/" + std::to_string(s.second) + "; ";
  }
  const double secs = secs_since(t0);
  return {ok && secs <= 35 * 60, detail + std::to_string(secs) + "s"};
}

// 4: the worst cost at the largest explored size is close to the reverse-sorted
// line count.
Outcome criterion4() {
  const auto run = load_results(work_dir() / "insertionx-a");
  std::uint64_t n_star = 0;
  for (const auto& [path, samples] : run.result.coverage)
    for (const auto& s : samples) n_star = std::max(n_star, s.size);
  double best = 0;
  for (const auto& [path, samples] : run.result.coverage)
    for (const auto& s : samples)
      if (s.size == n_star) best = std::max(best, s.cost);
  const auto worst = static_cast<double>(oracle::insertionx_reversed(n_star));
  const double ratio = best / worst;
  char buf[96];
  std::snprintf(buf, sizeof buf, "n*=%llu found=%.0f oracle=%.0f ratio=%.3f", static_cast<unsigned long long>(n_star),
                best, worst, ratio);
  return {ratio >= 0.9, buf};
}

PerfFunction random_function(Rng& rng, std::uint64_t id, std::uint64_t hi) {
  PerfFunction f;
  f.path = PathId{id};
  f.n_min = 1;
  f.n_max = hi;
  f.sample_count = 2;
  if (rng.chance(0.5)) {
    f.kind = FunctionKind::linear;
    f.a = static_cast<double>(rng.below(8));
    f.b = static_cast<double>(rng.below(40));
  } else {
    f.kind = FunctionKind::power_law;
    f.a = 0.5 + static_cast<double>(rng.below(6));
    f.b = 0.5 + 0.25 * static_cast<double>(rng.below(7));
  }
  return f;
}

// 5: clustering is sound and within one of the brute-force minimum.
Outcome criterion5() {
  Rng rng(505);
  const auto t0 = Clock::now();
  std::size_t unsound = 0, too_many = 0;
  for (int t = 0; t < 200; ++t) {
    const auto hi = 4 + rng.below(30);
    const Grid grid = Grid::covering(hi);
    std::vector<PerfFunction> fs;
    const auto count = 1 + rng.below(6);
    for (std::uint64_t i = 0; i < count; ++i) fs.push_back(random_function(rng, i + 1, hi));
    std::vector<std::vector<double>> dist(fs.size(), std::vector<double>(fs.size()));
    double max_d = 0;
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = 0; j < fs.size(); ++j) {
        dist[i][j] = l1_distance(fs[i], fs[j], grid);
        max_d = std::max(max_d, dist[i][j]);
      }
    const double eps = max_d * static_cast<double>(rng.below(101)) / 100.0;
    const auto cs = cluster(fs, eps, grid, static_cast<std::uint64_t>(t));
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = i + 1; j < fs.size(); ++j)
        if (cs.assignment.at(fs[i].path) == cs.assignment.at(fs[j].path) && dist[i][j] > eps) ++unsound;
    if (cs.k > oracle::min_feasible_k(dist, eps) + 1) ++too_many;
  }
  const double secs = secs_since(t0);
  return {unsound == 0 && too_many == 0 && secs <= 120,
          "unsound pairs=" + std::to_string(unsound) + " k over bound=" + std::to_string(too_many)};
}

// 6: noiseless fits recover their generators.
Outcome criterion6() {
  Rng rng(606);
  std::size_t bad = 0;
  for (int t = 0; t < 100; ++t) {
    const bool power = t % 2 == 1;
    const double a = 0.5 + static_cast<double>(rng.below(1000)) / 100.0;
    const double b = power ? 1.5 + static_cast<double>(rng.below(150)) / 100.0 : static_cast<double>(rng.below(500));
    std::vector<Sample> samples;
    std::vector<double> xs, ys, lx, ly;
    const auto count = 3 + rng.below(10);
    for (std::uint64_t i = 0; i < count; ++i) {
      const std::uint64_t n = 1 + i * (1 + rng.below(4)) + i;
      const double c = power ? a * std::pow(static_cast<double>(n), b) : a * static_cast<double>(n) + b;
      samples.push_back({n, c});
      xs.push_back(static_cast<double>(n));
      ys.push_back(c);
      lx.push_back(std::log(static_cast<double>(n)));
      ly.push_back(std::log(c));
    }
    const auto f = fit_perf_function(PathId{1}, samples);
    if (power) {
      const auto ref = oracle::least_squares(lx, ly);
      bad += f.kind != FunctionKind::power_law || std::fabs(f.b - ref.a) > 1e-3 || std::fabs(f.b - b) > 1e-3;
    } else {
      const auto ref = oracle::least_squares(xs, ys);
      bad += f.kind != FunctionKind::linear || std::fabs(f.a - ref.a) / ref.a > 1e-6 ||
             std::fabs(f.a - a) / a > 1e-6;
    }
  }
  return {bad == 0, "mismatches=" + std::to_string(bad) + "/100"};
}

FeatureMatrix numeric_matrix(const std::vector<std::vector<double>>& rows) {
  FeatureMatrix m;
  for (std::size_t c = 0; c < rows.front().size(); ++c)
    m.columns.push_back({"f" + std::to_string(c), ColumnKind::numeric, {}});
  m.rows = rows;
  m.provenance.resize(rows.size());
  return m;
}

// 7: CART root splits agree with exhaustive search; separable data is fit.
Outcome criterion7() {
  Rng rng(707);
  std::size_t mismatches = 0, imperfect = 0;
  for (int t = 0; t < 100; ++t) {
    const auto cols = 1 + rng.below(4);
    const auto n = 2 + rng.below(49);
    std::vector<std::vector<double>> rows(n);
    std::vector<std::size_t> labels(n);
    for (auto& r : rows)
      for (std::uint64_t c = 0; c < cols; ++c) r.push_back(static_cast<double>(rng.below(8)));
    for (auto& l : labels) l = rng.below(3);
    const auto tree = learn_tree(numeric_matrix(rows), labels);
    const auto best = oracle::best_numeric_root(rows, labels, TreeConfig{}.min_leaf);
    const bool pure = std::all_of(labels.begin(), labels.end(), [&](auto l) { return l == labels[0]; });
    if (!best || pure) {
      mismatches += !tree.nodes[0].leaf;
      continue;
    }
    mismatches += tree.nodes[0].leaf || tree.nodes[0].feature != best->feature ||
                  tree.nodes[0].threshold != best->threshold;
  }
  for (int t = 0; t < 100; ++t) {
    const auto n = 4 + rng.below(46);
    const auto cols = 1 + rng.below(4);
    const auto key = rng.below(cols);
    const double cut = static_cast<double>(rng.below(50));
    std::vector<std::vector<double>> rows(n);
    std::vector<std::size_t> labels;
    for (auto& r : rows) {
      for (std::uint64_t c = 0; c < cols; ++c) r.push_back(static_cast<double>(rng.below(100)));
      labels.push_back(r[key] > cut);
    }
    const auto m = numeric_matrix(rows);
    imperfect += training_accuracy(learn_tree(m, labels, {5, 1}), m, labels) != 1.0;
  }
  return {mismatches == 0 && imperfect == 0,
          "root mismatches=" + std::to_string(mismatches) + " imperfect separable=" + std::to_string(imperfect)};
}

// 8: parity explanation has the expected single-split shape.
Outcome criterion8() {
  const auto spec = builtin_spec("parity");
  PopulationMap pop;
  std::map<PathId, std::size_t> labels;
  for (std::uint8_t first : {2, 3, 4, 5, 7, 8}) {
    for (std::size_t n = 1; n <= 10; ++n) {
      Bytes b(n, static_cast<std::uint8_t>(n * 11));
      b[0] = first;
      const auto rec = run_instrumented(spec, b);
      pop[rec.path].push_back(b);
      labels[rec.path] = first % 2;
    }
  }
  const auto e = explain(pop, labels, spec);
  if (!e.input || !e.internal) return {false, "missing tree"};
  const auto single = [](const SpaceExplanation& s) {
    return s.tree.nodes.size() == 3 && s.accuracy == 1.0;
  };
  const auto root_name = [](const SpaceExplanation& s) { return s.tree.columns[s.tree.nodes[0].feature].name; };
  const auto in = root_name(*e.input), internal = root_name(*e.internal);
  const bool ok = single(*e.input) && single(*e.internal) && in.rfind("byte0", 0) == 0 &&
                  internal == "parity.inner_loop";
  return {ok, "tree-1 root " + e.input->tree.predicate(e.input->tree.nodes[0], true) + ", tree-2 root " +
                  e.internal->tree.predicate(e.internal->tree.nodes[0], true)};
}

// 9: re-running criterion 1 reproduces the bundle byte for byte.
Outcome criterion9() {
  if (cli(fuzz_args("insertionx", work_dir() / "insertionx-b")) != kExitOk) return {false, "fuzz failed"};
  bool ok = true;
  for (const char* f : {"results.json", "functions.csv"}) {
    const auto a = read_file(work_dir() / "insertionx-a" / f);
    const auto b = read_file(work_dir() / "insertionx-b" / f);
    ok &= !a.empty() && a == b;
  }
  return {ok, ok ? "results.json and functions.csv identical" : "bundles differ"};
}

// 10: the trace corpus parses or fails exactly as written.
Outcome criterion10() {
  std::size_t wrong = 0;
  const auto valid = corpus::valid_traces();
  const auto invalid = corpus::invalid_traces();
  for (const auto& v : valid) {
    try {
      const auto t = parse_external_trace(v.text);
      wrong += EdgeSet(v.edges.begin(), v.edges.end()) != t.edges || v.cost != t.cost ||
               InternalCounts(v.counts.begin(), v.counts.end()) != t.counts;
    } catch (const ParseError&) {
      ++wrong;
    }
  }
  for (const auto& v : invalid) {
    try {
      parse_external_trace(v.text);
      ++wrong;
    } catch (const ParseError& e) {
      wrong += e.line() != v.line;
    }
  }
  return {wrong == 0 && valid.size() == 20 && invalid.size() == 20,
          std::to_string(valid.size()) + " valid, " + std::to_string(invalid.size()) +
              " invalid, mismatches=" + std::to_string(wrong)};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9, criterion10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %zu: %s\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
