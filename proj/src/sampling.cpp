#include "osfd/sampling.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/random/sobol.hpp>

#include "osfd/geometry.hpp"

namespace osfd {

PointSet random_lhd(std::size_t n, std::size_t p, SeededRng& rng) {
  if (n == 0 || p == 0) throw UsageError("random_lhd: n and p must be >= 1");
  std::vector<double> coords(n * p);
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);
    for (std::size_t i = 0; i < n; ++i) {
      double v = (static_cast<double>(perm[i]) + rng.uniform()) /
                 static_cast<double>(n);
      // Guard the stratum's open upper end against rounding.
      const double upper = static_cast<double>(perm[i] + 1) / static_cast<double>(n);
      if (v >= upper) v = std::nextafter(upper, 0.0);
      coords[i * p + j] = v;
    }
  }
  return PointSet(p, std::move(coords));
}

double min_pairwise_distance(const PointSet& points) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t k = i + 1; k < points.size(); ++k)
      best = std::min(best, squared_distance(points[i].data(), points[k].data(),
                                             points.dim()));
  return points.size() < 2 ? 0.0 : std::sqrt(best);
}

PointSet maximin_lhd(std::size_t n, std::size_t p, SeededRng& rng,
                     std::size_t iters) {
  if (n < 2) throw UsageError("maximin_lhd: n must be >= 2");
  if (iters == 0) throw UsageError("maximin_lhd: iters must be >= 1");
  PointSet best = random_lhd(n, p, rng);
  double best_score = min_pairwise_distance(best);
  for (std::size_t it = 1; it < iters; ++it) {
    PointSet cand = random_lhd(n, p, rng);
    const double score = min_pairwise_distance(cand);
    if (score > best_score) {
      best_score = score;
      best = std::move(cand);
    }
  }
  return best;
}

namespace {

using SobolEngine =
    boost::random::sobol_engine<std::uint32_t, 32,
                                boost::random::default_sobol_table>;

// Lower-triangular (in digit order, most significant digit first) GF(2)
// matrix with unit diagonal. rows[k] selects the input digits feeding output
// digit k.
struct DigitScramble {
  std::array<std::uint32_t, 32> rows{};
  std::uint32_t shift = 0;

  static DigitScramble draw(SeededRng& rng) {
    DigitScramble s;
    for (unsigned k = 0; k < 32; ++k) {
      const std::uint32_t diag = 1u << (31 - k);
      const std::uint32_t higher = k == 0 ? 0u : (~0u << (32 - k));
      s.rows[k] = diag | (rng.next_u32() & higher);
    }
    s.shift = rng.next_u32();
    return s;
  }

  std::uint32_t apply(std::uint32_t x) const {
    std::uint32_t y = 0;
    for (unsigned k = 0; k < 32; ++k) {
      const auto bit = static_cast<std::uint32_t>(std::popcount(rows[k] & x) & 1);
      y |= bit << (31 - k);
    }
    return y ^ shift;
  }
};

}  // namespace

std::size_t sobol_max_dimension() {
  return boost::random::default_sobol_table::max_dimension;
}

PointSet scrambled_sobol(std::size_t n, std::size_t p, SeededRng& rng) {
  if (n == 0 || p == 0) throw UsageError("scrambled_sobol: n and p must be >= 1");
  if (p > sobol_max_dimension())
    throw UsageError("scrambled_sobol: dimension " + std::to_string(p) +
                     " exceeds direction-number table (" +
                     std::to_string(sobol_max_dimension()) + ")");
  std::vector<DigitScramble> scramble;
  scramble.reserve(p);
  for (std::size_t j = 0; j < p; ++j) scramble.push_back(DigitScramble::draw(rng));

  SobolEngine engine(p);
  std::vector<double> coords(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      // Boost starts at the second sequence element; restore the origin.
      const std::uint32_t raw = i == 0 ? 0u : engine();
      coords[i * p + j] = static_cast<double>(scramble[j].apply(raw)) * 0x1.0p-32;
    }
  }
  return PointSet(p, std::move(coords));
}

PointSet uniform_cube(std::size_t n, std::size_t p, SeededRng& rng) {
  std::vector<double> coords(n * p);
  for (auto& c : coords) c = rng.uniform();
  return PointSet(p, std::move(coords));
}

PointSet uniform_ball(std::size_t n, std::span<const double> center,
                      double radius, SeededRng& rng,
                      const std::optional<Basis>& basis) {
  if (!(radius >= 0.0)) throw UsageError("uniform_ball: negative radius");
  const std::size_t ambient = center.size();
  std::size_t d = ambient;
  if (basis) {
    d = basis->size();
    if (d == 0 || d > ambient)
      throw UsageError("uniform_ball: basis size must be in [1, ambient dim]");
    for (std::size_t a = 0; a < d; ++a) {
      if ((*basis)[a].size() != ambient)
        throw UsageError("uniform_ball: basis vector dimension mismatch");
      for (std::size_t b = a; b < d; ++b) {
        double dot = 0.0;
        for (std::size_t k = 0; k < ambient; ++k) dot += (*basis)[a][k] * (*basis)[b][k];
        if (std::abs(dot - (a == b ? 1.0 : 0.0)) > 1e-8)
          throw UsageError("uniform_ball: basis is not orthonormal");
      }
    }
  }

  PointSet out(ambient);
  out.reserve(n);
  if (radius == 0.0) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(center);
    return out;
  }

  std::vector<double> u(d);
  Point x(ambient);
  for (std::size_t i = 0; i < n; ++i) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (auto& c : u) {
        c = rng.normal();
        norm2 += c * c;
      }
    } while (norm2 == 0.0);
    const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(d)) /
                     std::sqrt(norm2);
    for (auto& c : u) c *= r;

    if (basis) {
      for (std::size_t k = 0; k < ambient; ++k) {
        double v = center[k];
        for (std::size_t a = 0; a < d; ++a) v += u[a] * (*basis)[a][k];
        x[k] = v;
      }
    } else {
      for (std::size_t k = 0; k < ambient; ++k) x[k] = center[k] + u[k];
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace osfd
