#pragma once

// Brute-force reference implementations used only by the tests. They avoid
// every shortcut the library takes (no squared-distance comparisons, no
// partial sorts) so they check the implementation rather than mirror it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "osfd/point_set.hpp"
#include "osfd/rng.hpp"

namespace oracle {

inline double dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

inline std::vector<std::size_t> knn(std::span<const double> q, const osfd::PointSet& set,
                                    std::size_t k, long exclude = -1) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t i = 0; i < set.size(); ++i)
    if (static_cast<long>(i) != exclude) all.emplace_back(dist(q, set[i]), i);
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < k; ++j) out.push_back(all[j].second);
  return out;
}

inline std::vector<std::size_t> assign(const osfd::PointSet& pts, const osfd::PointSet& centers) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < centers.size(); ++j)
      if (dist(pts[i], centers[j]) < dist(pts[i], centers[best])) best = j;
    out.push_back(best);
  }
  return out;
}

inline double fill(const osfd::PointSet& ref, const osfd::PointSet& outs) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < outs.size(); ++j) best = std::min(best, dist(ref[i], outs[j]));
    worst = std::max(worst, best);
  }
  return worst;
}

inline std::vector<double> local_fill(const osfd::PointSet& outs, const osfd::PointSet& approx) {
  std::vector<double> d(outs.size(), 0.0);
  const auto cell = assign(approx, outs);
  for (std::size_t a = 0; a < approx.size(); ++a)
    d[cell[a]] = std::max(d[cell[a]], dist(approx[a], outs[cell[a]]));
  return d;
}

inline osfd::PointSet random_set(std::size_t n, std::size_t dim, osfd::SeededRng& rng,
                                 double scale = 1.0) {
  osfd::PointSet out(dim);
  std::vector<double> p(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& c : p) c = scale * rng.uniform();
    out.push_back(p);
  }
  return out;
}

// Exact 2-D star discrepancy: boxes anchored at the origin with corners on
// the point coordinates (and 1), both open and closed counts.
inline double star_discrepancy_2d(const osfd::PointSet& pts) {
  const std::size_t n = pts.size();
  std::vector<double> xs{1.0}, ys{1.0};
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(pts[i][0]);
    ys.push_back(pts[i][1]);
  }
  double worst = 0.0;
  for (double a : xs)
    for (double b : ys) {
      std::size_t open = 0, closed = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (pts[i][0] < a && pts[i][1] < b) ++open;
        if (pts[i][0] <= a && pts[i][1] <= b) ++closed;
      }
      const double vol = a * b;
      worst = std::max({worst, std::abs(static_cast<double>(open) / n - vol),
                        std::abs(static_cast<double>(closed) / n - vol)});
    }
  return worst;
}

}  // namespace oracle
