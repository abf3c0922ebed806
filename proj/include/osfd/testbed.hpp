#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "osfd/point_set.hpp"

namespace osfd {

// Analytic test problems on the unit hypercube.

/// (1/sqrt(x1^2 + x2^2 + eps^2), angle of (x1, x2)); the angle is the
/// two-argument arctangent, which is 0 at the origin.
Point inverse_radius(std::span<const double> x, double eps);

/// Sums of exp(-a x1) + exp(-a x2) for a = alpha, 2 alpha, 4 alpha.
Point exponential(std::span<const double> x, double alpha);

/// prod_i cos(2 pi x_i) exp(-pi^2 (2 x_i - 1)^2 / p).
Point easom(std::span<const double> x);

/// End point of a planar four-segment arm. The first four coordinates are
/// the segment lengths, the last four are angles scaled by 2 pi.
Point robot_arm(std::span<const double> u);

using Evaluator = std::function<Point(std::span<const double>)>;

/// A named builtin problem, e.g. "inverse_radius:eps=0.1",
/// "exponential:alpha=100", "easom:p=8", "robot_arm".
struct Problem {
  std::string name;     // canonical spec string
  std::string family;   // inverse_radius | exponential | easom | robot_arm
  std::size_t p = 0;
  std::size_t q = 0;
  double param = 0.0;   // eps or alpha; unused otherwise
  Evaluator evaluate;
};

/// Parses a problem string; throws UsageError for unknown names or bad
/// parameters.
Problem make_problem(const std::string& spec);

}  // namespace osfd
