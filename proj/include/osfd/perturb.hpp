#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "osfd/filldist.hpp"
#include "osfd/point_set.hpp"
#include "osfd/rng.hpp"

namespace osfd {

enum class CandidateSource : std::uint8_t { kSobolBox, kBall, kMidpoint, kUniform };

/// Candidate inputs for the next design point, all inside [0,1]^p.
struct CandidateSet {
  PointSet points;
  std::vector<CandidateSource> sources;

  void add(const PointSet& pts, CandidateSource src);
};

/// Default neighbor count around the perturbed input: 2p, clamped to m - 1.
std::size_t effective_k2(std::size_t p, std::size_t m,
                         std::optional<std::size_t> k2_override);

// ---- greedy ---------------------------------------------------------------

/// Sobol points in the box of half-width d(x*, k2-th neighbor) around x*,
/// plus balls around x*'s k2 neighbors (radius = their distance to x*) and
/// around x* itself (radius = nearest-neighbor distance). Clipped to the unit
/// cube.
CandidateSet greedy_candidates(const PointSet& inputs, std::size_t i_star,
                               SeededRng& rng,
                               std::optional<std::size_t> k2_override = {});

struct Selection {
  std::size_t index = 0;   // into the candidate set
  bool fallback = false;   // no candidate fell in the target cell
};

/// Furthest candidate from x* among those whose nearest input is x*.
/// Candidates coinciding with an input are ignored. When the cell holds no
/// candidate, picks the candidate furthest from its own nearest input.
/// Returns nullopt only when every candidate duplicates an input.
std::optional<Selection> select_greedy(const PointSet& inputs, std::size_t i_star,
                                       const PointSet& candidates);

struct Proposal {
  Point x;
  bool fallback = false;
};

/// Greedy perturbation of input `i_star`.
Proposal greedy_perturbation(const PointSet& inputs, std::size_t i_star,
                             SeededRng& rng,
                             std::optional<std::size_t> k2_override = {});

// ---- expected improvement -------------------------------------------------

/// Leave-one-out variance scale of the nearest-neighbor predictor:
/// mean over i of (h_i - h_nn(i))^2 / |x_i - x_nn(i)|. Terms with a zero
/// denominator are dropped from the mean; 0 when all are dropped.
double estimate_sigma2(const PointSet& inputs, std::span<const double> h);

struct EiModel {
  double sigma2 = 0.0;
  std::vector<double> h;
  double h_max = 0.0;

  static EiModel fit(const PointSet& inputs, std::vector<double> h);
};

/// u * Phi(u) + phi(u), accurate in the far left tail.
double ei_kernel(double u);

/// E[max(0, h(x) - h_max)] with h(x) ~ N(h_i, sigma2 * |x - x_i|), x_i the
/// input nearest to x.
double expected_improvement(std::span<const double> x, const PointSet& inputs,
                            const EiModel& model);

/// Uniform points over the whole cube (10m), balls around the k2 neighbors
/// of x*, midpoints between every input and its j-th neighbor (j <= k2), and
/// a ball around x*. Clipped, deduplicated, inputs removed.
CandidateSet ei_candidates(const PointSet& inputs, std::size_t i_star,
                           SeededRng& rng,
                           std::optional<std::size_t> k2_override = {});

/// Candidate with the largest EI (lowest index on ties). nullopt when the set
/// is empty or no candidate has positive EI.
std::optional<std::size_t> select_ei(const PointSet& inputs, const EiModel& model,
                                     const PointSet& candidates);

/// EI perturbation; falls back to the greedy move when the model carries no
/// signal (sigma2 == 0 or every candidate scores 0).
Proposal ei_perturbation(const PointSet& inputs, const FillRecord& record,
                         SeededRng& rng,
                         std::optional<std::size_t> k2_override = {});

}  // namespace osfd
