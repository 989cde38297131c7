#pragma once

// Independent reference implementations used to derive expected values.
// None of these call into the library under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace oracle {

// Executed-line count of the insertionX listing: a right-to-left bubble pass
// that moves the minimum to the front, an early return when nothing moved,
// then insertion sort from index 2 using a[0] as sentinel. Charges follow
// the listing: every loop test is one line, swaps and shifts are two.
inline std::uint64_t insertionx_lines(std::vector<int> a) {
  const long n = static_cast<long>(a.size());
  std::uint64_t lines = 1;  // entry
  long moved = 0;
  for (long i = n - 1;; --i) {
    lines += 1;  // loop test
    if (i <= 0) break;
    lines += 1;  // compare
    if (a[i] < a[i - 1]) {
      std::swap(a[i], a[i - 1]);
      lines += 2;
      ++moved;
    }
    lines += 1;  // step
  }
  lines += 1;  // exchange test
  if (moved == 0) return lines + 1;
  lines += 1;  // insert init
  for (long i = 2;; ++i) {
    lines += 1;
    if (i >= n) break;
    lines += 1;  // head
    const int v = a[i];
    long j = i;
    while (true) {
      lines += 1;
      if (!(v < a[j - 1])) break;
      a[j] = a[j - 1];
      --j;
      lines += 2;
    }
    a[j] = v;
    lines += 1;  // place
  }
  return lines + 1;  // return
}

// Closed forms of the same count.
inline std::uint64_t insertionx_sorted(std::uint64_t n) { return n == 0 ? 4 : 3 * n + 1; }
inline std::uint64_t insertionx_reversed(std::uint64_t n) {
  if (n < 2) return insertionx_sorted(n);
  // bubble: n tests, n-1 compares, n-1 swaps, n-1 steps; insertion: element i
  // shifts i-1 places.
  const std::uint64_t bubble = 1 + n + 4 * (n - 1) + 1;
  const std::uint64_t insertion = 1 + (n - 1) + (n - 2) + (n - 2) * (n - 1) + (n * (n - 1) / 2 - 1) + (n - 2) + 1;
  return bubble + insertion;
}

inline std::uint64_t fnv1a(std::span<const std::uint64_t> sorted_edges) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto e : sorted_edges) {
    for (int b = 0; b < 8; ++b) {
      h ^= (e >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

struct Line {
  double a, b;
};

// Ordinary least squares through the normal equations.
inline Line least_squares(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double a = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {a, (sy - a * sx) / n};
}

inline double l1(const std::vector<double>& u, const std::vector<double>& v, double step) {
  double s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::fabs(u[i] - v[i]);
  return s * step;
}

// Smallest number of blocks over all set partitions of the points such that
// every block has pairwise distance <= eps.
inline std::size_t min_feasible_k(const std::vector<std::vector<double>>& dist, double eps) {
  const std::size_t n = dist.size();
  std::size_t best = n;
  std::vector<std::size_t> block(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (used >= best) return;
    if (i == n) {
      best = used;
      return;
    }
    for (std::size_t b = 0; b <= used && b < n; ++b) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (block[j] == b && dist[i][j] > eps) ok = false;
      if (!ok) continue;
      block[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
  return best;
}

struct RootSplit {
  std::size_t feature;
  double threshold;
  double gain;
};

inline double gini(const std::map<std::size_t, std::size_t>& counts, std::size_t total) {
  if (total == 0) return 0;
  double s = 1;
  for (const auto& [k, c] : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    s -= p * p;
  }
  return s;
}

// Exhaustive search over every numeric (feature, midpoint) pair. Ties go to
// the lower feature, then the lower threshold. Gains within tol are equal.
inline std::optional<RootSplit> best_numeric_root(const std::vector<std::vector<double>>& rows,
                                                  const std::vector<std::size_t>& labels, std::size_t min_leaf,
                                                  double tol = 1e-12) {
  const std::size_t n = rows.size();
  std::map<std::size_t, std::size_t> all;
  for (auto l : labels) ++all[l];
  const double parent = gini(all, n);
  std::optional<RootSplit> best;
  for (std::size_t f = 0; f < rows.front().size(); ++f) {
    std::vector<double> values;
    for (const auto& r : rows) values.push_back(r[f]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      const double t = 0.5 * (values[i] + values[i + 1]);
      std::map<std::size_t, std::size_t> l, r;
      std::size_t nl = 0, nr = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (rows[k][f] <= t) {
          ++l[labels[k]];
          ++nl;
        } else {
          ++r[labels[k]];
          ++nr;
        }
      }
      if (nl < min_leaf || nr < min_leaf) continue;
      const double gain = parent - (static_cast<double>(nl) * gini(l, nl) + static_cast<double>(nr) * gini(r, nr)) /
                                       static_cast<double>(n);
      if (gain < -tol) continue;
      if (!best || gain > best->gain + tol) best = RootSplit{f, t, gain};
    }
  }
  return best;
}

}  // namespace oracle
