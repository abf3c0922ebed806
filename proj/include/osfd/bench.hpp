#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "osfd/io.hpp"
#include "osfd/testbed.hpp"

namespace osfd {

/// Dense stand-in for a problem's output region, used to score designs.
///
/// Two-input problems push a sqrt(size) x sqrt(size) input grid (rounded up)
/// through the map; the robot arm samples its reachable disk of radius 4
/// uniformly; anything else pushes `size` scrambled Sobol inputs through.
PointSet reference_set(const Problem& problem, std::size_t size,
                       std::uint64_t seed = 0);

/// `size` points uniform in the disk of `radius` centered at the origin.
PointSet uniform_disk(std::size_t size, double radius, SeededRng& rng);

/// Run sizes at which fill is recorded: n0, n0 + every, ..., and n.
std::vector<std::size_t> record_sizes(std::size_t n0, std::size_t n,
                                      std::size_t every);

struct BenchRow {
  std::string method;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double fill = 0.0;
};

/// Methods understood by run_bench.
bool is_bench_method(const std::string& m);
bool is_sequential_method(const std::string& m);

/// One replication: for sequential methods a single run whose prefixes are
/// scored; for input-space designs a fresh design per recorded size.
std::vector<BenchRow> bench_replication(const RunConfig& config, const Problem& problem,
                                        const PointSet& reference,
                                        const std::string& method, std::uint64_t seed);

/// Seeds 1..reps for each method, run on up to `threads` workers. Rows are
/// sorted by (method, seed, n).
std::vector<BenchRow> run_bench(const RunConfig& config, std::size_t reps,
                                const std::vector<std::string>& methods,
                                std::size_t threads);

std::string bench_csv(const std::vector<BenchRow>& rows);

/// Worker count: OSFD_THREADS when set, else hardware concurrency.
std::size_t default_threads();

}  // namespace osfd
