#pragma once

#include <cstddef>
#include <vector>

#include "osfd/approx.hpp"
#include "osfd/point_set.hpp"

namespace osfd {

/// Approximate local fill distance of every design output.
struct FillRecord {
  std::vector<double> local;  // d_i, one per output
  std::size_t i_star = 0;     // lowest index attaining the maximum
  double global = 0.0;        // local[i_star]
};

/// Assigns each approximating point to its nearest output; d_i is the largest
/// distance among the points assigned to output i, or 0 when none are.
FillRecord local_fill_distances(const PointSet& outputs, const PointSet& approx);

inline FillRecord local_fill_distances(const PointSet& outputs,
                                       const ApproxSet& approx) {
  return local_fill_distances(outputs, approx.points);
}

/// Builds a record from given local distances (argmax with lowest-index ties).
FillRecord make_fill_record(std::vector<double> local);

}  // namespace osfd

#include "osfd/design.hpp"

namespace osfd {

struct GapPoint {
  std::size_t index;
  Point x;
  Point y;
};

/// The design pair behind the largest gap.
GapPoint gap_point(const FillRecord& record, const Design& design);

}  // namespace osfd
