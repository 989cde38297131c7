#include "dpfuzz/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dpfuzz {

double l1(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

namespace {

double median_of(std::vector<double>& v) {
  const auto n = v.size();
  std::sort(v.begin(), v.end());
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::size_t nearest(const Point& p, const std::vector<Point>& centroids) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = l1(p, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

void update_medians(const std::vector<Point>& points, const std::vector<std::size_t>& labels,
                    std::vector<Point>& centroids) {
  const std::size_t dim = points.front().size();
  std::vector<double> column;
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < points.size(); ++i)
      if (labels[i] == c) members.push_back(i);
    if (members.empty()) continue;
    for (std::size_t d = 0; d < dim; ++d) {
      column.clear();
      for (auto i : members) column.push_back(points[i][d]);
      centroids[c][d] = median_of(column);
    }
  }
}

}  // namespace

KMeansResult kmeans_l1(const std::vector<Point>& points, std::size_t k, Rng& rng, std::size_t max_iterations) {
  if (points.empty()) throw std::invalid_argument("kmeans_l1: no points");
  if (k == 0) throw std::invalid_argument("kmeans_l1: k must be positive");
  const std::size_t n = points.size();
  k = std::min(k, n);

  std::vector<Point> centroids{points[rng.below(n)]};
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  while (centroids.size() < k) {
    for (std::size_t i = 0; i < n; ++i) dist[i] = std::min(dist[i], l1(points[i], centroids.back()));
    double total = 0.0;
    for (double d : dist) total += d;
    if (!(total > 0.0)) break;  // every point already coincides with a centroid
    centroids.push_back(points[rng.weighted(dist)]);
  }

  std::vector<std::size_t> labels(n, 0);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = nearest(points[i], centroids);
      if (it == 0 || c != labels[i]) changed = true;
      labels[i] = c;
    }
    if (!changed) break;
    update_medians(points, labels, centroids);
  }

  // Compact away empty clusters, keeping first-appearance order stable.
  std::vector<std::size_t> remap(centroids.size(), static_cast<std::size_t>(-1));
  KMeansResult out;
  out.labels.resize(n);
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      if (labels[i] != c) continue;
      if (remap[c] == static_cast<std::size_t>(-1)) {
        remap[c] = out.centroids.size();
        out.centroids.push_back(centroids[c]);
      }
      out.labels[i] = remap[c];
    }
  }
  update_medians(points, out.labels, out.centroids);
  for (std::size_t i = 0; i < n; ++i) out.cost += l1(points[i], out.centroids[out.labels[i]]);
  return out;
}

}  // namespace dpfuzz
