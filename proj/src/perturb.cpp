#include "osfd/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "osfd/approx.hpp"
#include "osfd/geometry.hpp"
#include "osfd/sampling.hpp"

namespace osfd {

void CandidateSet::add(const PointSet& pts, CandidateSource src) {
  points.append(pts);
  sources.insert(sources.end(), pts.size(), src);
}

std::size_t effective_k2(std::size_t p, std::size_t m,
                         std::optional<std::size_t> k2_override) {
  if (m < 2) throw UsageError("perturbation: design needs at least 2 inputs");
  const std::size_t k2 = k2_override.value_or(2 * p);
  if (k2 == 0) throw UsageError("perturbation: k2 must be >= 1");
  return std::min(k2, m - 1);
}

namespace {

void clip_to_unit_cube(PointSet& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (double& c : pts[i]) c = std::clamp(c, 0.0, 1.0);
}

CandidateSet keep_rows(const CandidateSet& in, const std::vector<std::size_t>& rows) {
  CandidateSet out;
  out.points = PointSet(in.points.dim());
  out.points.reserve(rows.size());
  for (auto r : rows) {
    out.points.push_back(in.points[r]);
    out.sources.push_back(in.sources[r]);
  }
  return out;
}

// Last resort when every candidate coincides with an input: uniform draws.
Point fresh_uniform_point(const PointSet& inputs, SeededRng& rng) {
  for (;;) {
    auto pt = uniform_cube(1, inputs.dim(), rng);
    if (assign_with_distance(pt, inputs).distance[0] > 0.0) return pt.row(0);
  }
}

}  // namespace

CandidateSet greedy_candidates(const PointSet& inputs, std::size_t i_star,
                               SeededRng& rng,
                               std::optional<std::size_t> k2_override) {
  const std::size_t m = inputs.size();
  const std::size_t p = inputs.dim();
  const std::size_t k2 = effective_k2(p, m, k2_override);
  if (i_star >= m) throw UsageError("greedy_candidates: i_star out of range");
  const auto center = inputs[i_star];
  const auto nn = nearest_neighbors(center, inputs, k2, i_star);

  CandidateSet cand;
  cand.points = PointSet(p);

  const double half = nn.distances.back();
  auto box = scrambled_sobol(10 * p * (k2 + 1), p, rng);
  for (std::size_t i = 0; i < box.size(); ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const double lo = std::max(0.0, center[j] - half);
      const double hi = std::min(1.0, center[j] + half);
      box[i][j] = lo + (hi - lo) * box[i][j];
    }
  }
  cand.add(box, CandidateSource::kSobolBox);

  for (std::size_t j = 0; j < k2; ++j)
    cand.add(uniform_ball(10 * p, inputs[nn.indices[j]], nn.distances[j], rng),
             CandidateSource::kBall);
  cand.add(uniform_ball(10 * p, center, nn.distances.front(), rng),
           CandidateSource::kBall);

  clip_to_unit_cube(cand.points);
  return cand;
}

std::optional<Selection> select_greedy(const PointSet& inputs, std::size_t i_star,
                                       const PointSet& candidates) {
  if (i_star >= inputs.size()) throw UsageError("select_greedy: i_star out of range");
  if (candidates.empty()) return std::nullopt;
  const auto assigned = assign_with_distance(candidates, inputs);

  std::optional<std::size_t> in_cell;
  std::optional<std::size_t> isolated;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const double d = assigned.distance[c];
    if (d == 0.0) continue;  // coincides with an existing input
    if (assigned.cell[c] == i_star && (!in_cell || d > assigned.distance[*in_cell]))
      in_cell = c;
    if (!isolated || d > assigned.distance[*isolated]) isolated = c;
  }
  if (in_cell) return Selection{*in_cell, false};
  if (isolated) return Selection{*isolated, true};
  return std::nullopt;
}

Proposal greedy_perturbation(const PointSet& inputs, std::size_t i_star,
                             SeededRng& rng,
                             std::optional<std::size_t> k2_override) {
  const auto cand = greedy_candidates(inputs, i_star, rng, k2_override);
  const auto sel = select_greedy(inputs, i_star, cand.points);
  if (!sel) return {fresh_uniform_point(inputs, rng), true};
  return {cand.points.row(sel->index), sel->fallback};
}

double estimate_sigma2(const PointSet& inputs, std::span<const double> h) {
  const std::size_t m = inputs.size();
  if (m < 2) throw UsageError("estimate_sigma2: need at least 2 inputs");
  if (h.size() != m) throw UsageError("estimate_sigma2: h size mismatch");
  double total = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto nn = nearest_neighbors(inputs[i], inputs, 1, i);
    const double dist = nn.distances.front();
    if (dist == 0.0) continue;
    const double diff = h[i] - h[nn.indices.front()];
    total += diff * diff / dist;
    ++used;
  }
  return used == 0 ? 0.0 : total / static_cast<double>(used);
}

EiModel EiModel::fit(const PointSet& inputs, std::vector<double> h) {
  if (h.empty()) throw UsageError("EiModel: empty h");
  EiModel model;
  model.sigma2 = estimate_sigma2(inputs, h);
  model.h_max = *std::max_element(h.begin(), h.end());
  model.h = std::move(h);
  return model;
}

double ei_kernel(double u) {
  constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
  if (u >= -5.0) {
    const double cdf = 0.5 * std::erfc(-u / std::numbers::sqrt2);
    const double pdf = kInvSqrt2Pi * std::exp(-0.5 * u * u);
    return std::max(0.0, u * cdf + pdf);
  }
  // Left tail: phi(t) - t*Q(t) = phi(t) * c / (t + c), with c the tail of the
  // Mills-ratio continued fraction 1/(t + 2/(t + 3/(t + ...))).
  const double t = -u;
  double f = t;
  for (int n = 80; n >= 2; --n) f = t + n / f;
  const double c = 1.0 / f;
  return kInvSqrt2Pi * std::exp(-0.5 * t * t) * c / (t + c);
}

namespace {

double ei_from_neighbor(const EiModel& model, std::size_t cell, double dist) {
  if (model.sigma2 <= 0.0) return 0.0;
  const double s = std::sqrt(model.sigma2 * dist);
  const double gap = model.h[cell] - model.h_max;
  if (s == 0.0) return std::max(0.0, gap);
  return s * ei_kernel(gap / s);
}

}  // namespace

double expected_improvement(std::span<const double> x, const PointSet& inputs,
                            const EiModel& model) {
  if (model.h.size() != inputs.size())
    throw UsageError("expected_improvement: model does not match design");
  const auto nn = nearest_neighbors(x, inputs, 1);
  return ei_from_neighbor(model, nn.indices.front(), nn.distances.front());
}

CandidateSet ei_candidates(const PointSet& inputs, std::size_t i_star,
                           SeededRng& rng,
                           std::optional<std::size_t> k2_override) {
  const std::size_t m = inputs.size();
  const std::size_t p = inputs.dim();
  const std::size_t k2 = effective_k2(p, m, k2_override);
  if (i_star >= m) throw UsageError("ei_candidates: i_star out of range");
  const auto center = inputs[i_star];
  const auto nn = nearest_neighbors(center, inputs, k2, i_star);

  std::vector<NeighborList> all_nn;
  all_nn.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    all_nn.push_back(nearest_neighbors(inputs[i], inputs, k2, i));

  CandidateSet cand;
  cand.points = PointSet(p);
  cand.add(uniform_cube(10 * m, p, rng), CandidateSource::kUniform);

  PointSet mids(p);
  Point mid(p);
  for (std::size_t j = 0; j < k2; ++j) {
    cand.add(uniform_ball(10 * p, inputs[nn.indices[j]], nn.distances[j], rng),
             CandidateSource::kBall);
    mids.clear();
    for (std::size_t i = 0; i < m; ++i) {
      const auto a = inputs[i];
      const auto b = inputs[all_nn[i].indices[j]];
      for (std::size_t c = 0; c < p; ++c) mid[c] = 0.5 * (a[c] + b[c]);
      mids.push_back(mid);
    }
    cand.add(mids, CandidateSource::kMidpoint);
  }
  cand.add(uniform_ball(10 * p, center, nn.distances.front(), rng),
           CandidateSource::kBall);

  clip_to_unit_cube(cand.points);
  auto unique = keep_rows(cand, unique_rows(cand.points));

  const auto assigned = assign_with_distance(unique.points, inputs);
  std::vector<std::size_t> fresh;
  fresh.reserve(unique.points.size());
  for (std::size_t c = 0; c < unique.points.size(); ++c)
    if (assigned.distance[c] > 0.0) fresh.push_back(c);
  return keep_rows(unique, fresh);
}

std::optional<std::size_t> select_ei(const PointSet& inputs, const EiModel& model,
                                     const PointSet& candidates) {
  if (model.h.size() != inputs.size())
    throw UsageError("select_ei: model does not match design");
  if (candidates.empty()) return std::nullopt;
  const auto assigned = assign_with_distance(candidates, inputs);
  std::optional<std::size_t> best;
  double best_ei = 0.0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const double ei = ei_from_neighbor(model, assigned.cell[c], assigned.distance[c]);
    if (ei > best_ei) {
      best_ei = ei;
      best = c;
    }
  }
  return best;
}

Proposal ei_perturbation(const PointSet& inputs, const FillRecord& record,
                         SeededRng& rng,
                         std::optional<std::size_t> k2_override) {
  if (record.local.size() != inputs.size())
    throw UsageError("ei_perturbation: fill record does not match design");
  const auto cand = ei_candidates(inputs, record.i_star, rng, k2_override);
  const auto model = EiModel::fit(inputs, record.local);
  if (model.sigma2 > 0.0) {
    if (const auto best = select_ei(inputs, model, cand.points))
      return {cand.points.row(*best), false};
  }
  auto greedy = greedy_perturbation(inputs, record.i_star, rng, k2_override);
  greedy.fallback = true;
  return greedy;
}

}  // namespace osfd
