#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "osfd/errors.hpp"

namespace osfd {

/// A single point in input or output space.
using Point = std::vector<double>;

/// Row-major set of points sharing one dimension.
///
/// Sets are the unit of work for every geometric query, so coordinates are
/// stored contiguously instead of as a vector of vectors.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim) : dim_(dim) {}
  PointSet(std::size_t dim, std::vector<double> coords);
  PointSet(std::initializer_list<std::initializer_list<double>> rows);

  static PointSet from_points(const std::vector<Point>& points);

  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<double> operator[](std::size_t i) {
    return {coords_.data() + i * dim_, dim_};
  }

  Point row(std::size_t i) const {
    auto r = (*this)[i];
    return {r.begin(), r.end()};
  }

  void push_back(std::span<const double> p);
  void append(const PointSet& other);
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }
  void clear() { coords_.clear(); }

  /// First `n` rows.
  PointSet prefix(std::size_t n) const;

  const std::vector<double>& coords() const { return coords_; }

  std::vector<Point> to_points() const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

}  // namespace osfd
