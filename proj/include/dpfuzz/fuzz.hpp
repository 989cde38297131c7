#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpfuzz/harness.hpp"
#include "dpfuzz/perf_model.hpp"
#include "dpfuzz/rng.hpp"

namespace dpfuzz {

// Per path, at most one sample per size: the highest cost seen for it.
using CoverageMap = std::map<PathId, std::vector<Sample>>;
// Inputs parallel to CoverageMap samples (same length, same order).
using PopulationMap = std::map<PathId, std::vector<TargetInput>>;

// True iff the record opens a new path, a new size on a known path, or
// strictly beats the retained cost at its (path, size). Non-ok records are
// never admitted.
bool admit(const CoverageMap& cov, const ExecutionRecord& record);

// Stores the record's (size, cost) and input at its (path, size) slot,
// replacing a previous occupant. Keeps Cov and Pop aligned.
void record_admission(CoverageMap& cov, PopulationMap& pop, const ExecutionRecord& record);

enum class Policy { dpfuzz, slowfuzz, perffuzz };

const char* to_string(Policy policy);
Policy policy_from_string(const std::string& s);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FuzzConfig {
  std::uint64_t max_iterations = 200'000;
  std::uint64_t cluster_interval = 1'000;
  // Unset: 5% of the median pairwise distance at the first clustering that
  // sees two distinct functions, then fixed.
  std::optional<double> epsilon;
  // Unset: 4 * epsilon.
  std::optional<double> separation;
  std::size_t target_clusters = 4;
  double time_budget_secs = 600.0;
  std::uint64_t rng_seed = 0;
  Policy policy = Policy::dpfuzz;
  std::vector<TargetInput> seeds;
  double crossover_probability = 0.2;

  void check() const;  // throws ConfigError
};

struct FuzzEvent {
  enum class Kind { admit, cluster, reject };
  Kind kind = Kind::admit;
  std::uint64_t iteration = 0;
  PathId path;
  std::uint64_t size = 0;
  double cost = 0.0;
  bool new_path = false;
  std::size_t clusters = 0;
  std::size_t separated = 0;
  std::string detail;
};

const char* to_string(FuzzEvent::Kind kind);

struct FuzzResult {
  CoverageMap coverage;
  PopulationMap population;
  std::vector<PerfFunction> functions;  // modeled paths, ordered by PathId
  ClusterSet clusters;
  std::uint64_t iterations = 0;
  std::uint64_t samples = 0;  // #N: every executed input, seeds included
  std::uint64_t crashes = 0;
  std::uint64_t timeouts = 0;
  double epsilon = 0.0;
  double separation = 0.0;
  std::string stop_reason;
  std::vector<FuzzEvent> events;
};

// Cluster drawn uniformly; path within it with probability proportional to
// its best retained cost; input within the path proportional to its cost.
// Zero weights are lifted to 1. Paths the clustering has not assigned (new or
// unmodeled ones) form one extra group.
const TargetInput& select(const ClusterSet& clusters, const CoverageMap& cov, const PopulationMap& pop, Rng& rng);

// Single global population used by the slowfuzz and perffuzz baselines.
class GlobalPopulation {
 public:
  explicit GlobalPopulation(Policy policy);

  // slowfuzz: cost strictly above every retained cost (vacuous when empty).
  // perffuzz: a never-seen edge, or a strictly higher cost on some edge.
  bool admit(const ExecutionRecord& record) const;
  void add(const ExecutionRecord& record);

  // slowfuzz: uniform over all inputs. perffuzz: uniform over inputs that
  // currently hold the maximum cost of at least one edge.
  const TargetInput& select(Rng& rng) const;

  std::size_t size() const { return inputs_.size(); }
  const std::vector<TargetInput>& inputs() const { return inputs_; }
  const std::vector<double>& costs() const { return costs_; }

 private:
  Policy policy_;
  std::vector<TargetInput> inputs_;
  std::vector<double> costs_;
  std::map<std::uint64_t, std::pair<double, std::size_t>> edge_best_;  // edge -> (cost, input index)
};

struct ModelSnapshot {
  std::vector<PerfFunction> functions;
  Grid grid;
};

// Fits every path with enough distinct sizes; the grid spans 1..max size.
ModelSnapshot fit_coverage(const CoverageMap& cov);

// Evolutionary search over the target. Throws ConfigError for an invalid
// config, a seed outside the input domain, or a seed that does not run ok.
FuzzResult fuzz(const TargetSpec& spec, const FuzzConfig& config);

}  // namespace dpfuzz
