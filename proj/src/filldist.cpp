#include "osfd/filldist.hpp"

#include "osfd/geometry.hpp"

namespace osfd {

FillRecord make_fill_record(std::vector<double> local) {
  if (local.empty()) throw UsageError("fill record: no outputs");
  FillRecord rec;
  rec.local = std::move(local);
  for (std::size_t i = 1; i < rec.local.size(); ++i)
    if (rec.local[i] > rec.local[rec.i_star]) rec.i_star = i;
  rec.global = rec.local[rec.i_star];
  return rec;
}

FillRecord local_fill_distances(const PointSet& outputs, const PointSet& approx) {
  if (outputs.empty()) throw UsageError("local_fill_distances: no outputs");
  if (approx.empty()) throw UsageError("local_fill_distances: empty approximating set");
  if (outputs.dim() != approx.dim())
    throw UsageError("local_fill_distances: dimension mismatch");
  const auto assigned = assign_with_distance(approx, outputs);
  std::vector<double> local(outputs.size(), 0.0);
  for (std::size_t a = 0; a < approx.size(); ++a) {
    double& d = local[assigned.cell[a]];
    if (assigned.distance[a] > d) d = assigned.distance[a];
  }
  return make_fill_record(std::move(local));
}

}  // namespace osfd

namespace osfd {

GapPoint gap_point(const FillRecord& record, const Design& design) {
  if (record.local.size() != design.size() || record.i_star >= design.size())
    throw std::logic_error("gap_point: record does not match design");
  return {record.i_star, design.inputs.row(record.i_star),
          design.outputs.row(record.i_star)};
}

}  // namespace osfd
