#pragma once

#include <cstddef>
#include <span>

#include "osfd/geometry.hpp"
#include "osfd/point_set.hpp"

namespace osfd {

/// Paired input/output history of a run.
struct Design {
  std::size_t p = 0;
  std::size_t q = 0;
  PointSet inputs;       // m x p, inside [0,1]^p
  PointSet outputs;      // m x q, raw units
  ScaleRecord scale;     // refreshed by the engine before each proposal

  Design() = default;
  Design(std::size_t p_, std::size_t q_) : p(p_), q(q_), inputs(p_), outputs(q_) {}

  std::size_t size() const { return inputs.size(); }

  void append(std::span<const double> x, std::span<const double> y) {
    inputs.push_back(x);
    outputs.push_back(y);
  }
};

}  // namespace osfd
