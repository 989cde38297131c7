#include "dpfuzz/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "dpfuzz/explain.hpp"
#include "dpfuzz/report.hpp"

namespace dpfuzz {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FuzzArgs {
  std::string target;
  std::string external_cmd;
  double budget_secs = 600.0;
  std::uint64_t iterations = FuzzConfig{}.max_iterations;
  std::string policy = "dpfuzz";
  std::optional<double> epsilon;
  std::optional<double> sigma;
  std::size_t k = FuzzConfig{}.target_clusters;
  std::uint64_t cluster_interval = FuzzConfig{}.cluster_interval;
  std::uint64_t seed = 0;
  std::string cost_mode = "lines";
  std::size_t max_len = 0;
  double timeout_secs = 15 * 60;
  double elbow_threshold = 1000.0;
  std::string out;
};

void add_fuzz_options(CLI::App* app, FuzzArgs& a) {
  app->add_option("--target", a.target, "built-in target name");
  app->add_option("--external-cmd", a.external_cmd, "shell command of an instrumented external target");
  app->add_option("--budget-secs", a.budget_secs, "wall-clock budget per run")->check(CLI::NonNegativeNumber);
  app->add_option("--iterations", a.iterations, "maximum fuzzing iterations");
  app->add_option("--epsilon", a.epsilon, "cluster diameter bound (default: derived from the first functions)");
  app->add_option("--sigma", a.sigma, "centroid separation for termination (default: 4 * epsilon)");
  app->add_option("--k", a.k, "stop after this many separated clusters");
  app->add_option("--cluster-interval", a.cluster_interval, "iterations between reclustering");
  app->add_option("--seed", a.seed, "random seed");
  app->add_option("--cost-mode", a.cost_mode, "lines or time")->check(CLI::IsMember({"lines", "time"}));
  app->add_option("--max-len", a.max_len, "maximum input length in bytes");
  app->add_option("--timeout-secs", a.timeout_secs, "per-execution timeout");
  app->add_option("--elbow-threshold", a.elbow_threshold, "clustering error threshold for #K");
}

TargetRef make_target(const FuzzArgs& a) {
  if (a.target.empty() == a.external_cmd.empty())
    throw UsageError("exactly one of --target or --external-cmd is required");
  TargetRef ref;
  if (!a.target.empty()) {
    const auto* b = find_builtin(a.target);
    if (!b) {
      std::string known;
      for (const auto& t : builtin_targets()) known += (known.empty() ? "" : ", ") + t.name;
      throw UsageError("unknown target '" + a.target + "' (known: " + known + ")");
    }
    ref.builtin = b->name;
    ref.display_name = b->display_name;
    if (a.max_len && !std::holds_alternative<ByteDomain>(b->domain))
      throw UsageError("--max-len applies to byte-input targets only");
  } else {
    ref.external_cmd = a.external_cmd;
    ref.display_name = "external";
  }
  ref.cost_mode = cost_mode_from_string(a.cost_mode);
  if (!(a.timeout_secs > 0)) throw UsageError("--timeout-secs must be positive");
  ref.timeout_secs = a.timeout_secs;
  ref.max_len = a.max_len;
  return ref;
}

FuzzConfig make_config(const FuzzArgs& a, const TargetSpec& spec) {
  FuzzConfig c;
  c.max_iterations = a.iterations;
  c.cluster_interval = a.cluster_interval;
  c.epsilon = a.epsilon;
  c.separation = a.sigma;
  c.target_clusters = a.k;
  c.time_budget_secs = a.budget_secs;
  c.rng_seed = a.seed;
  try {
    c.policy = policy_from_string(a.policy);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto seeds = spec.builtin ? spec.builtin->seeds
                                  : std::vector<TargetInput>{Bytes{0x10, 0x20, 0x30, 0x40}, Bytes{0x40, 0x30, 0x20, 0x10}};
  for (const auto& s : seeds) c.seeds.push_back(clamp(spec.domain, s));
  try {
    c.check();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return c;
}

struct Timed {
  FuzzResult result;
  double wall_secs = 0.0;
};

Timed timed_fuzz(const TargetSpec& spec, const FuzzConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  auto result = fuzz(spec, config);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(result), secs};
}

int cmd_fuzz(const FuzzArgs& a, std::ostream& out) {
  if (a.out.empty()) throw UsageError("--out is required");
  const auto ref = make_target(a);
  const auto spec = ref.to_spec();
  RunRecord run{ref, make_config(a, spec), {}, a.elbow_threshold};
  auto timed = timed_fuzz(spec, run.config);
  run.result = std::move(timed.result);
  save_results(a.out, run, timed.wall_secs);
  const auto row = write_reports(a.out);
  out << format_row(row) << "\n";
  return kExitOk;
}

template <class T>
T median_of(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

int cmd_compare(const FuzzArgs& a, std::size_t repeat, const std::string& mode, std::ostream& out) {
  if (repeat < 1) throw UsageError("--repeat must be >= 1");
  const auto ref = make_target(a);
  const auto spec = ref.to_spec();
  std::vector<MetricsRow> table;
  for (const char* policy : {"dpfuzz", "slowfuzz", "perffuzz"}) {
    FuzzArgs pa = a;
    pa.policy = policy;
    std::vector<MetricsRow> rows;
    for (std::size_t r = 0; r < repeat; ++r) {
      pa.seed = a.seed + r;
      const auto config = make_config(pa, spec);
      const auto timed = timed_fuzz(spec, config);
      MetricsOptions options;
      options.elbow_threshold = a.elbow_threshold;
      options.seed = config.rng_seed;
      rows.push_back(compute_metrics(timed.result, ref.display_name, policy, timed.wall_secs, options));
    }
    MetricsRow agg = rows.front();
    auto column = [&](auto member) {
      std::vector<std::decay_t<decltype(rows.front().*member)>> v;
      for (const auto& r : rows) v.push_back(r.*member);
      return mode == "best" ? *std::max_element(v.begin(), v.end()) : median_of(v);
    };
    agg.samples = column(&MetricsRow::samples);
    agg.worst_cost = column(&MetricsRow::worst_cost);
    agg.paths = column(&MetricsRow::paths);
    agg.functions = column(&MetricsRow::functions);
    agg.clusters = column(&MetricsRow::clusters);
    agg.wall_secs = column(&MetricsRow::wall_secs);
    table.push_back(agg);
  }
  const auto text = format_table(table);
  out << text;
  if (!a.out.empty()) {
    fs::create_directories(a.out);
    write_file(fs::path(a.out) / "compare.txt", text);
    write_file(fs::path(a.out) / "compare.csv", metrics_csv(table));
  }
  return kExitOk;
}

struct ExplainArgs {
  std::string run;
  std::optional<std::size_t> k;
  std::string space = "both";
  std::size_t max_depth = TreeConfig{}.max_depth;
  std::size_t min_leaf = TreeConfig{}.min_leaf;
};

int cmd_explain(const ExplainArgs& a, std::ostream& out) {
  const auto run = load_results(a.run);
  const auto& r = run.result;
  std::map<PathId, std::size_t> labels = r.clusters.assignment;
  if (a.k) {
    if (*a.k < 1 || *a.k > r.functions.size())
      throw UsageError("--k must lie in [1, " + std::to_string(r.functions.size()) + "]");
    labels = cluster_fixed_k(r.functions, *a.k, r.clusters.grid, run.config.rng_seed).assignment;
  }
  if (labels.empty()) throw std::runtime_error("the run has no clustered paths to explain");
  if (a.min_leaf < 1) throw UsageError("--min-leaf must be >= 1");

  ExplainOptions options;
  options.tree = {a.max_depth, a.min_leaf};
  options.input_space = a.space != "internal";
  options.internal_space = a.space != "input";
  const auto explanation = explain(r.population, labels, run.target.to_spec(), options);
  write_file(fs::path(a.run) / "trees.json", explanation_to_json(explanation).dump(1) + "\n");
  const auto text = predicates_text(explanation);
  write_file(fs::path(a.run) / "predicates.txt", text);
  out << text;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differential performance fuzzer", "dpfuzz"};
  app.require_subcommand(1);

  FuzzArgs fuzz_args;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "fuzz one target and write a result bundle");
  add_fuzz_options(fuzz_cmd, fuzz_args);
  fuzz_cmd->add_option("--policy", fuzz_args.policy, "dpfuzz, slowfuzz or perffuzz")
      ->check(CLI::IsMember({"dpfuzz", "slowfuzz", "perffuzz"}));
  fuzz_cmd->add_option("--out", fuzz_args.out, "bundle directory")->required();

  FuzzArgs compare_args;
  std::size_t repeat = 1;
  std::string report_mode = "best";
  auto* compare_cmd = app.add_subcommand("compare", "run every policy on one target and tabulate metrics");
  add_fuzz_options(compare_cmd, compare_args);
  compare_cmd->add_option("--out", compare_args.out, "directory for compare.txt and compare.csv");
  compare_cmd->add_option("--repeat", repeat, "runs per policy (seeds seed..seed+R-1)");
  compare_cmd->add_option("--report", report_mode, "aggregate repeats by best or median")
      ->check(CLI::IsMember({"best", "median"}));

  ExplainArgs explain_args;
  auto* explain_cmd = app.add_subcommand("explain", "learn decision trees that separate the clusters of a run");
  explain_cmd->add_option("--run", explain_args.run, "bundle directory")->required();
  explain_cmd->add_option("--k", explain_args.k, "recluster into exactly k clusters");
  explain_cmd->add_option("--space", explain_args.space, "input, internal or both")
      ->check(CLI::IsMember({"input", "internal", "both"}));
  explain_cmd->add_option("--max-depth", explain_args.max_depth, "tree depth limit");
  explain_cmd->add_option("--min-leaf", explain_args.min_leaf, "minimum rows per leaf");

  std::string report_run;
  auto* report_cmd = app.add_subcommand("report", "regenerate CSV and SVG reports of a bundle");
  report_cmd->add_option("--run", report_run, "bundle directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*fuzz_cmd) return cmd_fuzz(fuzz_args, out);
    if (*compare_cmd) return cmd_compare(compare_args, repeat, report_mode, out);
    if (*explain_cmd) return cmd_explain(explain_args, out);
    if (*report_cmd) {
      out << format_row(write_reports(report_run)) << "\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace dpfuzz
