#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "osfd/point_set.hpp"
#include "osfd/rng.hpp"

namespace osfd {

/// Random Latin hypercube: one point per stratum [(j-1)/n, j/n) in every
/// dimension, uniform within strata, independent permutations per dimension.
PointSet random_lhd(std::size_t n, std::size_t p, SeededRng& rng);

/// Best of `iters` random LHDs under the maximin (smallest pairwise distance)
/// criterion. iters == 1 reproduces random_lhd.
PointSet maximin_lhd(std::size_t n, std::size_t p, SeededRng& rng,
                     std::size_t iters = 1000);

/// Smallest pairwise distance of a set (0 for fewer than two points).
double min_pairwise_distance(const PointSet& points);

/// Highest dimension scrambled_sobol supports.
std::size_t sobol_max_dimension();

/// First `n` points of a Sobol sequence under a random linear matrix scramble
/// plus digital shift drawn from `rng`. Points lie in [0,1)^p.
PointSet scrambled_sobol(std::size_t n, std::size_t p, SeededRng& rng);

/// Orthonormal directions spanning an affine subspace; `columns[k]` has the
/// ambient dimension.
using Basis = std::vector<Point>;

/// `n` points uniform in the ball of `radius` around `center`. Without a
/// basis the ball has the ambient dimension; with one, it is the d-ball in
/// the affine subspace center + span(basis).
PointSet uniform_ball(std::size_t n, std::span<const double> center,
                      double radius, SeededRng& rng,
                      const std::optional<Basis>& basis = std::nullopt);

/// `n` points uniform in the unit hypercube.
PointSet uniform_cube(std::size_t n, std::size_t p, SeededRng& rng);

}  // namespace osfd
