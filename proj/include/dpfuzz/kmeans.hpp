#pragma once

#include <cstddef>
#include <vector>

#include "dpfuzz/rng.hpp"

namespace dpfuzz {

using Point = std::vector<double>;

struct KMeansResult {
  std::vector<std::size_t> labels;  // compacted: labels cover 0..centroids.size()-1
  std::vector<Point> centroids;
  double cost = 0.0;  // sum of l1 distances of points to their centroid
};

double l1(const Point& a, const Point& b);

// Lloyd iterations under the l1 norm: nearest-centroid assignment followed by
// coordinate-wise medians. Seeding draws each new centroid with probability
// proportional to its l1 distance from the nearest chosen one. Clusters that
// end up empty are dropped.
KMeansResult kmeans_l1(const std::vector<Point>& points, std::size_t k, Rng& rng, std::size_t max_iterations = 100);

}  // namespace dpfuzz
