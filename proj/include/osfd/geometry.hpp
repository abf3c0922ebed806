#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "osfd/point_set.hpp"

// Euclidean geometry shared by every stage of the design loop. All queries are
// exact scans and every tie resolves to the lowest index.

namespace osfd {

double distance(std::span<const double> a, std::span<const double> b);

// Unchecked squared distance for inner loops; callers guarantee equal sizes.
inline double squared_distance(const double* a, const double* b,
                               std::size_t dim) {
  double s = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

struct NeighborList {
  std::vector<std::size_t> indices;
  std::vector<double> distances;
};

/// The `k` points of `set` closest to `query`, ascending by distance.
/// `exclude` removes one index from consideration (the query's own row).
NeighborList nearest_neighbors(std::span<const double> query,
                               const PointSet& set, std::size_t k,
                               std::optional<std::size_t> exclude = {});

/// Index of the nearest center for each point (Voronoi cell membership).
std::vector<std::size_t> assign_to_nearest(const PointSet& points,
                                           const PointSet& centers);

struct Assignment {
  std::vector<std::size_t> cell;
  std::vector<double> distance;
};

/// Same as assign_to_nearest, also returning the distance to that center.
Assignment assign_with_distance(const PointSet& points,
                                const PointSet& centers);

/// max over `reference` of the distance to the closest point of `outputs`.
double fill_distance(const PointSet& reference, const PointSet& outputs);

/// Distance from every reference point to its closest output.
std::vector<double> nearest_distances(const PointSet& reference,
                                      const PointSet& outputs);

/// Per-dimension bounds used to map a point set into the unit box.
class ScaleRecord {
 public:
  ScaleRecord() = default;
  ScaleRecord(std::vector<double> lo, std::vector<double> hi);

  static ScaleRecord fit(const PointSet& points);

  std::size_t dim() const { return lo_.size(); }
  const std::vector<double>& lo() const { return lo_; }
  const std::vector<double>& hi() const { return hi_; }

  // Zero-range dimensions map to the constant 0.5.
  Point apply(std::span<const double> p) const;
  PointSet apply(const PointSet& points) const;
  // Inverse of apply; zero-range dimensions return their constant value.
  Point invert(std::span<const double> p) const;

 private:
  std::vector<double> lo_;
  std::vector<double> hi_;
};

struct ScaledSet {
  PointSet points;
  ScaleRecord record;
};

ScaledSet scale_to_unit_box(const PointSet& points);

}  // namespace osfd
