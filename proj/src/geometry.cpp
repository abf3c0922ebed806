#include "osfd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace osfd {

// PointSet lives here; it is too small for its own translation unit.

PointSet::PointSet(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0 && !coords_.empty())
    throw UsageError("PointSet: zero dimension with coordinates");
  if (dim_ != 0 && coords_.size() % dim_ != 0)
    throw UsageError("PointSet: coordinate count not a multiple of dim");
}

PointSet::PointSet(std::initializer_list<std::initializer_list<double>> rows) {
  for (const auto& r : rows) {
    if (dim_ == 0) dim_ = r.size();
    if (r.size() != dim_) throw UsageError("PointSet: ragged rows");
    coords_.insert(coords_.end(), r.begin(), r.end());
  }
}

PointSet PointSet::from_points(const std::vector<Point>& points) {
  PointSet out(points.empty() ? 0 : points.front().size());
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p);
  return out;
}

void PointSet::push_back(std::span<const double> p) {
  if (dim_ == 0 && coords_.empty()) dim_ = p.size();
  if (p.size() != dim_)
    throw UsageError("PointSet: dimension mismatch (" +
                     std::to_string(p.size()) + " vs " +
                     std::to_string(dim_) + ")");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

void PointSet::append(const PointSet& other) {
  if (other.empty()) return;
  if (dim_ == 0 && coords_.empty()) dim_ = other.dim_;
  if (other.dim_ != dim_) throw UsageError("PointSet: dimension mismatch");
  coords_.insert(coords_.end(), other.coords_.begin(), other.coords_.end());
}

PointSet PointSet::prefix(std::size_t n) const {
  n = std::min(n, size());
  return PointSet(dim_, std::vector<double>(coords_.begin(),
                                            coords_.begin() + n * dim_));
}

std::vector<Point> PointSet::to_points() const {
  std::vector<Point> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(row(i));
  return out;
}

double distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw UsageError("distance: dimension mismatch");
  return std::sqrt(squared_distance(a.data(), b.data(), a.size()));
}

NeighborList nearest_neighbors(std::span<const double> query,
                               const PointSet& set, std::size_t k,
                               std::optional<std::size_t> exclude) {
  if (set.empty()) throw UsageError("nearest_neighbors: empty set");
  if (query.size() != set.dim())
    throw UsageError("nearest_neighbors: dimension mismatch");
  const bool drop = exclude && *exclude < set.size();
  const std::size_t usable = set.size() - (drop ? 1 : 0);
  if (k > usable)
    throw UsageError("nearest_neighbors: k=" + std::to_string(k) +
                     " exceeds " + std::to_string(usable) +
                     " available points");

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(usable);
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (drop && i == *exclude) continue;
    scored.emplace_back(squared_distance(query.data(), set[i].data(), set.dim()),
                        i);
  }
  // pair ordering is (distance, index): ties fall to the lower index.
  std::partial_sort(scored.begin(), scored.begin() + static_cast<long>(k),
                    scored.end());

  NeighborList out;
  out.indices.reserve(k);
  out.distances.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    out.indices.push_back(scored[j].second);
    out.distances.push_back(std::sqrt(scored[j].first));
  }
  return out;
}

Assignment assign_with_distance(const PointSet& points,
                                const PointSet& centers) {
  if (centers.empty()) throw UsageError("assign_to_nearest: no centers");
  if (!points.empty() && points.dim() != centers.dim())
    throw UsageError("assign_to_nearest: dimension mismatch");
  const std::size_t dim = centers.dim();
  const std::size_t m = centers.size();
  const double* c = centers.coords().data();

  Assignment out;
  out.cell.resize(points.size());
  out.distance.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double* x = points[i].data();
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const double d = squared_distance(x, c + j * dim, dim);
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    out.cell[i] = arg;
    out.distance[i] = std::sqrt(best);
  }
  return out;
}

std::vector<std::size_t> assign_to_nearest(const PointSet& points,
                                           const PointSet& centers) {
  return assign_with_distance(points, centers).cell;
}

std::vector<double> nearest_distances(const PointSet& reference,
                                      const PointSet& outputs) {
  if (reference.empty() || outputs.empty())
    throw UsageError("fill_distance: empty point set");
  if (reference.dim() != outputs.dim())
    throw UsageError("fill_distance: dimension mismatch");
  return assign_with_distance(reference, outputs).distance;
}

double fill_distance(const PointSet& reference, const PointSet& outputs) {
  const auto d = nearest_distances(reference, outputs);
  return *std::max_element(d.begin(), d.end());
}

ScaleRecord::ScaleRecord(std::vector<double> lo, std::vector<double> hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size())
    throw UsageError("ScaleRecord: bound size mismatch");
  for (std::size_t j = 0; j < lo_.size(); ++j)
    if (!(lo_[j] <= hi_[j])) throw UsageError("ScaleRecord: min > max");
}

ScaleRecord ScaleRecord::fit(const PointSet& points) {
  if (points.empty()) throw UsageError("ScaleRecord::fit: empty set");
  std::vector<double> lo(points.dim(), std::numeric_limits<double>::infinity());
  std::vector<double> hi(points.dim(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto p = points[i];
    for (std::size_t j = 0; j < p.size(); ++j) {
      lo[j] = std::min(lo[j], p[j]);
      hi[j] = std::max(hi[j], p[j]);
    }
  }
  return {std::move(lo), std::move(hi)};
}

Point ScaleRecord::apply(std::span<const double> p) const {
  if (p.size() != dim()) throw UsageError("ScaleRecord: dimension mismatch");
  Point out(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double range = hi_[j] - lo_[j];
    out[j] = range > 0.0 ? (p[j] - lo_[j]) / range : 0.5;
  }
  return out;
}

PointSet ScaleRecord::apply(const PointSet& points) const {
  PointSet out(points.dim());
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out.push_back(apply(points[i]));
  return out;
}

Point ScaleRecord::invert(std::span<const double> p) const {
  if (p.size() != dim()) throw UsageError("ScaleRecord: dimension mismatch");
  Point out(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double range = hi_[j] - lo_[j];
    out[j] = range > 0.0 ? lo_[j] + p[j] * range : lo_[j];
  }
  return out;
}

ScaledSet scale_to_unit_box(const PointSet& points) {
  if (points.size() < 2)
    throw UsageError("scale_to_unit_box: need at least 2 points");
  auto record = ScaleRecord::fit(points);
  return {record.apply(points), std::move(record)};
}

}  // namespace osfd
