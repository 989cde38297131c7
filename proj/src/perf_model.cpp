#include "dpfuzz/perf_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "dpfuzz/kmeans.hpp"
#include "dpfuzz/rng.hpp"

namespace dpfuzz {

const char* to_string(FunctionKind kind) { return kind == FunctionKind::linear ? "linear" : "power_law"; }

FunctionKind function_kind_from_string(const std::string& s) {
  if (s == "linear") return FunctionKind::linear;
  if (s == "power_law") return FunctionKind::power_law;
  throw std::invalid_argument("unknown function kind '" + s + "'");
}

double PerfFunction::operator()(double n) const {
  if (kind == FunctionKind::linear) return a * n + b;
  return a * std::pow(n, b);
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double xm = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double ym = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  const double slope = sxy / sxx;
  return {slope, ym - slope * xm};
}

double mean_abs_error(const PerfFunction& f, std::span<const Sample> samples) {
  double s = 0.0;
  for (const auto& smp : samples) s += std::abs(f(static_cast<double>(smp.size)) - smp.cost);
  return s / static_cast<double>(samples.size());
}

std::size_t distinct_sizes(std::span<const Sample> samples, bool log_usable) {
  std::set<std::uint64_t> sizes;
  for (const auto& s : samples)
    if (!log_usable || (s.size >= 1 && s.cost > 0.0)) sizes.insert(s.size);
  return sizes.size();
}

}  // namespace

PerfFunction fit_perf_function(PathId path, std::span<const Sample> samples) {
  for (const auto& s : samples)
    if (!std::isfinite(s.cost)) throw std::invalid_argument("fit_perf_function: non-finite cost");
  if (distinct_sizes(samples, false) < 2) throw UnmodeledError("fewer than 2 distinct sizes");

  PerfFunction base;
  base.path = path;
  base.sample_count = samples.size();
  base.n_min = std::numeric_limits<std::uint64_t>::max();
  double mean_cost = 0.0;
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& s : samples) {
    base.n_min = std::min(base.n_min, s.size);
    base.n_max = std::max(base.n_max, s.size);
    x.push_back(static_cast<double>(s.size));
    y.push_back(s.cost);
    mean_cost += std::abs(s.cost);
  }
  mean_cost /= static_cast<double>(samples.size());

  PerfFunction linear = base;
  const auto lf = least_squares(x, y);
  linear.kind = FunctionKind::linear;
  linear.a = lf.slope;
  linear.b = lf.intercept;
  linear.residual = mean_abs_error(linear, samples);

  if (distinct_sizes(samples, true) < 3) return linear;

  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& s : samples) {
    if (s.size < 1 || !(s.cost > 0.0)) continue;
    lx.push_back(std::log(static_cast<double>(s.size)));
    ly.push_back(std::log(s.cost));
  }
  const auto pf = least_squares(lx, ly);
  if (!(pf.slope >= 0.0) || !std::isfinite(pf.intercept)) return linear;
  PerfFunction power = base;
  power.kind = FunctionKind::power_law;
  power.a = std::exp(pf.intercept);
  power.b = pf.slope;
  power.residual = mean_abs_error(power, samples);

  // Residuals that agree to rounding count as a tie, which goes to Linear.
  const double tie = 1e-9 * (1.0 + mean_cost);
  return power.residual < linear.residual - tie ? power : linear;
}

std::vector<double> Grid::points() const {
  std::vector<double> out;
  for (std::uint64_t n = lo; n <= hi; n += step) out.push_back(static_cast<double>(n));
  return out;
}

Grid Grid::covering(std::uint64_t max_size, std::size_t max_points) {
  Grid g;
  g.lo = 1;
  g.hi = std::max<std::uint64_t>(max_size, 1);
  g.step = std::max<std::uint64_t>(1, (g.hi + max_points - 1) / max_points);
  return g;
}

std::vector<double> evaluate(const PerfFunction& f, const Grid& grid) {
  auto pts = grid.points();
  for (auto& p : pts) p = f(p);
  return pts;
}

double l1_distance(std::span<const double> u, std::span<const double> v, const Grid& grid) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::abs(u[i] - v[i]);
  return s * static_cast<double>(grid.step);
}

double l1_distance(const PerfFunction& f, const PerfFunction& g, const Grid& grid) {
  const auto u = evaluate(f, grid);
  const auto v = evaluate(g, grid);
  return l1_distance(u, v, grid);
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k, std::uint64_t restart) {
  // splitmix64 finalizer over the combined words
  std::uint64_t z = seed ^ (k * 0x9e3779b97f4a7c15ULL) ^ (restart * 0xbf58476d1ce4e5b9ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::size_t kRestarts = 10;

ClusterSet make_set(std::span<const PerfFunction> functions, const KMeansResult& res, const Grid& grid,
                    double epsilon) {
  ClusterSet out;
  out.k = res.centroids.size();
  out.centroids = res.centroids;
  out.grid = grid;
  out.epsilon = epsilon;
  for (std::size_t i = 0; i < functions.size(); ++i) out.assignment[functions[i].path] = res.labels[i];
  out.separated_count = out.k == 1 ? 1 : 0;
  return out;
}

std::vector<Point> embed(std::span<const PerfFunction> functions, const Grid& grid) {
  std::vector<Point> pts;
  pts.reserve(functions.size());
  for (const auto& f : functions) pts.push_back(evaluate(f, grid));
  return pts;
}

KMeansResult best_of_restarts(const std::vector<Point>& pts, std::size_t k, std::uint64_t seed) {
  KMeansResult best;
  best.cost = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < kRestarts; ++r) {
    Rng rng(mix_seed(seed, k, r));
    auto res = kmeans_l1(pts, k, rng);
    if (res.cost < best.cost) best = std::move(res);
  }
  return best;
}

}  // namespace

ClusterSet cluster(std::span<const PerfFunction> functions, double epsilon, const Grid& grid, std::uint64_t seed) {
  if (functions.empty()) throw std::invalid_argument("cluster: no functions");
  const auto pts = embed(functions, grid);
  const std::size_t n = pts.size();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) dist[i][j] = dist[j][i] = l1_distance(pts[i], pts[j], grid);

  auto feasible = [&](const std::vector<std::size_t>& labels) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (labels[i] == labels[j] && dist[i][j] > epsilon) return false;
    return true;
  };

  // Points pairwise farther than epsilon apart must land in distinct
  // clusters, so a greedy set of them bounds k from below; smaller k can
  // never pass the check.
  std::vector<std::size_t> far;
  for (std::size_t i = 0; i < n; ++i) {
    bool independent = true;
    for (auto j : far)
      if (!(dist[i][j] > epsilon)) independent = false;
    if (independent) far.push_back(i);
  }

  for (std::size_t k = std::max<std::size_t>(1, far.size()); k < n; ++k) {
    KMeansResult best;
    bool found = false;
    for (std::size_t r = 0; r < kRestarts; ++r) {
      Rng rng(mix_seed(seed, k, r));
      auto res = kmeans_l1(pts, k, rng);
      if (!feasible(res.labels)) continue;
      if (!found || res.cost < best.cost) {
        best = std::move(res);
        found = true;
      }
    }
    if (found) return make_set(functions, best, grid, epsilon);
  }

  // k = n: singletons always satisfy the tolerance.
  KMeansResult singletons;
  singletons.labels.resize(n);
  std::iota(singletons.labels.begin(), singletons.labels.end(), std::size_t{0});
  singletons.centroids = pts;
  return make_set(functions, singletons, grid, epsilon);
}

ClusterSet cluster_fixed_k(std::span<const PerfFunction> functions, std::size_t k, const Grid& grid,
                           std::uint64_t seed) {
  if (functions.empty()) throw std::invalid_argument("cluster_fixed_k: no functions");
  if (k == 0) throw std::invalid_argument("cluster_fixed_k: k must be positive");
  const auto pts = embed(functions, grid);
  auto res = best_of_restarts(pts, k, seed);
  double diameter = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (res.labels[i] == res.labels[j]) diameter = std::max(diameter, l1_distance(pts[i], pts[j], grid));
  return make_set(functions, res, grid, diameter);
}

std::size_t separated_count(const ClusterSet& clusters, double sigma) {
  const auto& c = clusters.centroids;
  if (c.size() == 1) return 1;
  std::size_t count = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    bool separated = true;
    for (std::size_t j = 0; j < c.size() && separated; ++j)
      if (i != j && !(l1_distance(c[i], c[j], clusters.grid) > sigma)) separated = false;
    if (separated) ++count;
  }
  return count;
}

std::size_t elbow_k(std::span<const PerfFunction> functions, double error_threshold, const Grid& grid,
                    std::uint64_t seed) {
  if (functions.empty()) throw std::invalid_argument("elbow_k: no functions");
  const auto pts = embed(functions, grid);
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const auto res = best_of_restarts(pts, k, seed);
    if (res.cost * static_cast<double>(grid.step) < error_threshold) return k;
  }
  return pts.size();
}

std::size_t elbow_k(std::span<const PerfFunction> functions, double error_threshold) {
  std::uint64_t hi = 1;
  for (const auto& f : functions) hi = std::max(hi, f.n_max);
  return elbow_k(functions, error_threshold, Grid::covering(hi));
}

double median_pairwise_distance(std::span<const PerfFunction> functions, const Grid& grid) {
  const auto pts = embed(functions, grid);
  std::vector<double> d;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d.push_back(l1_distance(pts[i], pts[j], grid));
  if (d.empty()) return 0.0;
  std::sort(d.begin(), d.end());
  const auto m = d.size();
  return m % 2 ? d[m / 2] : 0.5 * (d[m / 2 - 1] + d[m / 2]);
}

}  // namespace dpfuzz
