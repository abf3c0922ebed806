#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "osfd/geometry.hpp"
#include "osfd/sampling.hpp"

using namespace osfd;

TEST_CASE("random_lhd places one point per stratum") {
  SeededRng rng(1);
  for (std::size_t n : {1u, 2u, 10u, 57u}) {
    for (std::size_t p : {1u, 3u, 8u}) {
      const auto d = random_lhd(n, p, rng);
      REQUIRE(d.size() == n);
      REQUIRE(d.dim() == p);
      for (std::size_t k = 0; k < p; ++k) {
        std::set<long> strata;
        for (std::size_t i = 0; i < n; ++i) {
          CHECK(d[i][k] >= 0.0);
          CHECK(d[i][k] < 1.0);
          strata.insert(static_cast<long>(std::floor(d[i][k] * static_cast<double>(n))));
        }
        CHECK(strata.size() == n);
      }
    }
  }
  CHECK_THROWS_AS(random_lhd(0, 2, rng), UsageError);
}

TEST_CASE("random_lhd is reproducible from its seed") {
  SeededRng a(77), b(77), c(78);
  const auto da = random_lhd(20, 3, a);
  CHECK(da == random_lhd(20, 3, b));
  CHECK_FALSE(da == random_lhd(20, 3, c));
}

TEST_CASE("maximin_lhd with one iteration is a random LHD") {
  SeededRng a(5), b(5);
  CHECK(maximin_lhd(12, 4, a, 1) == random_lhd(12, 4, b));
  CHECK_THROWS_AS(maximin_lhd(12, 4, a, 0), UsageError);
  CHECK_THROWS_AS(maximin_lhd(1, 4, a), UsageError);
}

TEST_CASE("maximin_lhd beats the typical random LHD") {
  SeededRng rng(8);
  std::vector<double> mins;
  for (int t = 0; t < 1000; ++t) mins.push_back(min_pairwise_distance(random_lhd(10, 2, rng)));
  std::nth_element(mins.begin(), mins.begin() + 500, mins.end());
  const double median = mins[500];
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SeededRng r(seed);
    const auto d = maximin_lhd(10, 2, r, 1000);
    CHECK(min_pairwise_distance(d) >= median);
  }
}

TEST_CASE("min_pairwise_distance") {
  CHECK(min_pairwise_distance(PointSet{{0, 0}}) == 0.0);
  CHECK(min_pairwise_distance(PointSet{{0, 0}, {3, 4}, {0, 1}}) == 1.0);
}

TEST_CASE("scrambled_sobol stays in the unit cube and is reproducible") {
  SeededRng a(3), b(3);
  const auto s = scrambled_sobol(1000, 8, a);
  CHECK(s == scrambled_sobol(1000, 8, b));
  for (double c : s.coords()) {
    CHECK(c >= 0.0);
    CHECK(c < 1.0);
  }
  CHECK_THROWS_AS(scrambled_sobol(4, sobol_max_dimension() + 1, a), UsageError);
  CHECK_THROWS_AS(scrambled_sobol(0, 2, a), UsageError);
}

TEST_CASE("scrambled_sobol keeps the net structure") {
  // The first 2^m points of a scrambled (0,2)-sequence put exactly one point
  // in every elementary box of area 2^-m.
  const int m = 8;
  const std::size_t n = 1u << m;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SeededRng rng(seed);
    const auto s = scrambled_sobol(n, 2, rng);
    for (int a = 0; a <= m; ++a) {
      const double wx = std::ldexp(1.0, a), wy = std::ldexp(1.0, m - a);
      std::set<std::pair<long, long>> boxes;
      for (std::size_t i = 0; i < n; ++i)
        boxes.emplace(static_cast<long>(s[i][0] * wx), static_cast<long>(s[i][1] * wy));
      CHECK(boxes.size() == n);
    }
  }
}

TEST_CASE("scrambled_sobol is more uniform than independent points") {
  double sobol = 0.0, iid = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SeededRng rng(seed);
    sobol += oracle::star_discrepancy_2d(scrambled_sobol(256, 2, rng));
    iid += oracle::star_discrepancy_2d(uniform_cube(256, 2, rng));
  }
  CHECK(sobol < iid);
}

TEST_CASE("uniform_ball") {
  SeededRng rng(2);
  const Point c{0.3, -0.2, 1.0};

  SUBCASE("zero radius collapses to the center") {
    const auto b = uniform_ball(5, c, 0.0, rng);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.row(i) == c);
  }
  SUBCASE("points lie inside the ball") {
    const auto b = uniform_ball(5000, c, 0.7, rng);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(distance(b[i], c) <= 0.7 * (1 + 1e-12));
  }
  SUBCASE("radial law of a uniform disk") {
    const std::size_t n = 100000;
    const auto b = uniform_ball(n, Point{1, 1}, 2.0, rng);
    std::size_t inner = 0;
    for (std::size_t i = 0; i < n; ++i) inner += distance(b[i], Point{1, 1}) <= 1.0;
    CHECK(static_cast<double>(inner) / n == doctest::Approx(0.25).epsilon(0.04));
  }
  SUBCASE("subspace balls stay on their plane") {
    const double s = 1.0 / std::sqrt(2.0);
    const Basis basis{{s, s, 0.0}};
    const auto b = uniform_ball(2000, c, 0.5, rng, basis);
    for (std::size_t i = 0; i < b.size(); ++i) {
      Point d(3);
      for (int k = 0; k < 3; ++k) d[k] = b[i][k] - c[k];
      const double t = d[0] * s + d[1] * s;
      double resid = 0.0;
      for (int k = 0; k < 3; ++k) resid += std::pow(d[k] - t * basis[0][k], 2);
      CHECK(std::sqrt(resid) < 1e-12);
      CHECK(std::abs(t) <= 0.5 * (1 + 1e-12));
    }
  }
  SUBCASE("invalid arguments") {
    CHECK_THROWS_AS(uniform_ball(1, c, -1.0, rng), UsageError);
    CHECK_THROWS_AS(uniform_ball(1, c, 1.0, rng, Basis{{1, 1, 0}}), UsageError);
    CHECK_THROWS_AS(uniform_ball(1, c, 1.0, rng, Basis{{1, 0, 0}, {1, 0, 0}}), UsageError);
    CHECK_THROWS_AS(uniform_ball(1, c, 1.0, rng, Basis{{1, 0}}), UsageError);
  }
}
