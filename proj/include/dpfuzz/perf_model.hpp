#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpfuzz/trace.hpp"

namespace dpfuzz {

// One retained (size, cost) observation of a path.
struct Sample {
  std::uint64_t size = 0;
  double cost = 0.0;
  bool operator==(const Sample&) const = default;
};

enum class FunctionKind { linear, power_law };

const char* to_string(FunctionKind kind);
FunctionKind function_kind_from_string(const std::string& s);

// Fitted performance function of a path: a*n + b (linear) or a*n^b (power law).
struct PerfFunction {
  PathId path;
  FunctionKind kind = FunctionKind::linear;
  double a = 0.0;
  double b = 0.0;
  std::uint64_t n_min = 0;
  std::uint64_t n_max = 0;
  double residual = 0.0;  // mean absolute error over the fitted samples
  std::size_t sample_count = 0;

  double operator()(double n) const;
};

// The path has too few distinct sizes to be modeled.
class UnmodeledError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PerfFunction fit_perf_function(PathId path, std::span<const Sample> samples);

// Integer sizes lo, lo+step, ..., <= hi.
struct Grid {
  std::uint64_t lo = 1;
  std::uint64_t hi = 1;
  std::uint64_t step = 1;

  std::vector<double> points() const;
  // 1..max_size with the smallest step that keeps at most max_points points.
  static Grid covering(std::uint64_t max_size, std::size_t max_points = 512);
  bool operator==(const Grid&) const = default;
};

std::vector<double> evaluate(const PerfFunction& f, const Grid& grid);

// Riemann sum of |f - g| over the grid, weighted by the step.
double l1_distance(const PerfFunction& f, const PerfFunction& g, const Grid& grid);
double l1_distance(std::span<const double> u, std::span<const double> v, const Grid& grid);

struct ClusterSet {
  std::size_t k = 0;
  std::map<PathId, std::size_t> assignment;
  std::vector<std::vector<double>> centroids;  // per-cluster median evaluation vector
  double epsilon = 0.0;
  std::size_t separated_count = 0;
  Grid grid;
};

// Smallest k (searching upward from 1) for which l1 KMeans yields clusters
// whose members are pairwise within epsilon.
ClusterSet cluster(std::span<const PerfFunction> functions, double epsilon, const Grid& grid, std::uint64_t seed);

// KMeans with a fixed number of clusters (no epsilon guarantee).
ClusterSet cluster_fixed_k(std::span<const PerfFunction> functions, std::size_t k, const Grid& grid,
                           std::uint64_t seed);

// Clusters whose centroid is farther than sigma from every other centroid.
std::size_t separated_count(const ClusterSet& clusters, double sigma);

// Smallest k whose total l1 distance of members to their centroid is below
// the threshold.
std::size_t elbow_k(std::span<const PerfFunction> functions, double error_threshold, const Grid& grid,
                    std::uint64_t seed = 0);
std::size_t elbow_k(std::span<const PerfFunction> functions, double error_threshold);

double median_pairwise_distance(std::span<const PerfFunction> functions, const Grid& grid);

}  // namespace dpfuzz
