#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "osfd/point_set.hpp"
#include "osfd/rng.hpp"
#include "osfd/sampling.hpp"

namespace osfd {

/// Which construction produced an approximating point.
enum class ApproxTag : std::uint8_t {
  kSimplex,   // A1: simplex centroid and axial points
  kMidpoint,  // A2: midpoints to nearest neighbors
  kBall,      // A3: ball (or tangent-ball) samples
};

/// Point cloud standing in for the unknown output region.
struct ApproxSet {
  PointSet points;
  std::vector<ApproxTag> tags;

  // Counts per construction before duplicate removal.
  std::size_t simplex_count = 0;
  std::size_t midpoint_count = 0;
  std::size_t ball_count = 0;
};

struct TangentBasis {
  Point origin;
  Basis directions;
  bool degenerate = false;
};

/// Mean of the `order + 1` simplex vertices.
Point simplex_centroid(const PointSet& vertices, std::size_t order);

/// Axial points c_j = (1.5/k) * sum_{l != j} y_l - 0.5 * y_j for a simplex of
/// order k (k + 1 vertices). They sit on the extended medians, past the
/// opposite faces, so the cloud can reach beyond the convex hull.
PointSet axial_points(const PointSet& vertices, std::size_t order);

/// Leading `p` principal directions of {y} U neighbors (p neighbors, p < q).
/// Directions are orthonormal with the first non-negligible component
/// positive. A rank-deficient neighborhood is completed with arbitrary
/// orthonormal directions and flagged degenerate.
TangentBasis tangent_basis(std::span<const double> y, const PointSet& neighbors,
                           std::size_t p);

/// Minimum number of outputs approx_gen accepts.
inline std::size_t approx_min_outputs(std::size_t p, std::size_t q) {
  return std::min(p, q) + 1;
}

/// Approximating set for the output region spanned by `outputs`.
///
/// Per output y_i, with k = min(p, q) and k1 = 2k neighbors (clamped to
/// m - 1, or `k1_override`):
///  - the simplex on y_i and its k nearest neighbors contributes its centroid
///    and k + 1 axial points;
///  - midpoints between y_i and each of its k1 nearest neighbors;
///  - uniform samples in a ball of radius d(y_i, nearest neighbor). When
///    p >= q this is a q-ball of k1 + 2(q+1) + 1 points; otherwise a p-ball of
///    k1 + 2(p+1) + 1 points on the PCA tangent plane at y_i. Zero-radius
///    balls are skipped.
/// Exact duplicates are removed, keeping the first occurrence.
ApproxSet approx_gen(const PointSet& outputs, std::size_t p, std::size_t q,
                     SeededRng& rng,
                     std::optional<std::size_t> k1_override = std::nullopt);

/// Removes exact coordinate duplicates, keeping first occurrences in order.
/// Returns the kept row indices.
std::vector<std::size_t> unique_rows(const PointSet& points);

}  // namespace osfd
