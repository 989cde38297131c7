#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "dpfuzz/explain.hpp"
#include "dpfuzz/fuzz.hpp"
#include "dpfuzz/harness.hpp"

namespace dpfuzz {

inline constexpr int kSchemaVersion = 1;

// One row of the fuzzer comparison table.
struct MetricsRow {
  std::string target;
  std::string policy;
  std::uint64_t samples = 0;      // #N
  double worst_cost = 0.0;        // W
  std::size_t paths = 0;          // #P
  std::size_t functions = 0;      // #M
  std::size_t clusters = 0;       // #K
  double wall_secs = 0.0;
};

struct MetricsOptions {
  double residual_fraction = 0.2;  // #M: residual at most this fraction of the path's mean cost
  double elbow_threshold = 1000.0;
  std::uint64_t seed = 0;  // KMeans restarts inside the elbow search
};

// Functions counted by #M.
std::vector<PerfFunction> distinct_functions(const FuzzResult& result, double residual_fraction);

MetricsRow compute_metrics(const FuzzResult& result, const std::string& target, const std::string& policy,
                           double wall_secs, const MetricsOptions& options = {});

// "Quick Sort | dpfuzz | #N=7800000 | W=721 | #P=14 | #M=11 | #K=3"
std::string format_row(const MetricsRow& row);
std::string format_table(std::span<const MetricsRow> rows);
std::string metrics_csv(std::span<const MetricsRow> rows);

// Columns: path_id, kind, a, b, n_min, n_max, residual, sample_count, cluster.
std::string functions_csv(std::span<const PerfFunction> functions, const ClusterSet& clusters);

// Size-vs-cost curves, one polyline per function, colored by cluster.
std::string render_svg(std::span<const PerfFunction> functions, const ClusterSet& clusters);

std::string format_path(PathId path);
PathId parse_path(const std::string& s);

nlohmann::json input_to_json(const TargetInput& input);
TargetInput input_from_json(const nlohmann::json& j);

// Target identity and execution settings stored with a run.
struct TargetRef {
  std::string builtin;       // empty for external targets
  std::string external_cmd;
  std::string display_name;
  CostMode cost_mode = CostMode::lines;
  double timeout_secs = 15 * 60;
  std::size_t max_len = 0;   // byte domains only; 0 keeps the default

  TargetSpec to_spec() const;
};

struct RunRecord {
  TargetRef target;
  FuzzConfig config;
  FuzzResult result;
  double elbow_threshold = 1000.0;
};

nlohmann::json run_to_json(const RunRecord& run);
RunRecord run_from_json(const nlohmann::json& j);

// Bundle directory layout: results.json, functions.csv, metrics.csv,
// clusters.svg, timing.json, and after explain: trees.json, predicates.txt.
void save_results(const std::filesystem::path& dir, const RunRecord& run, double wall_secs);
RunRecord load_results(const std::filesystem::path& dir);
double load_wall_secs(const std::filesystem::path& dir);

// Regenerates functions.csv, metrics.csv and clusters.svg from results.json.
MetricsRow write_reports(const std::filesystem::path& dir);

nlohmann::json tree_to_json(const DecisionTree& tree);
std::string predicates_text(const Explanation& explanation);
nlohmann::json explanation_to_json(const Explanation& explanation);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace dpfuzz
