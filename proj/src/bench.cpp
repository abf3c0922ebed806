#include "osfd/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "osfd/geometry.hpp"
#include "osfd/sampling.hpp"

namespace osfd {

PointSet uniform_disk(std::size_t size, double radius, SeededRng& rng) {
  PointSet out(2);
  out.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    const double r = radius * std::sqrt(rng.uniform());
    const double t = 2.0 * std::numbers::pi * rng.uniform();
    const double pt[2] = {r * std::cos(t), r * std::sin(t)};
    out.push_back(pt);
  }
  return out;
}

PointSet reference_set(const Problem& problem, std::size_t size, std::uint64_t seed) {
  if (size == 0) throw UsageError("reference_set: size must be positive");
  SeededRng rng(seed);
  if (problem.family == "robot_arm") return uniform_disk(size, 4.0, rng);

  PointSet out(problem.q);
  if (problem.p == 2) {
    const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(size))));
    const double step = side > 1 ? 1.0 / static_cast<double>(side - 1) : 0.0;
    out.reserve(side * side);
    for (std::size_t a = 0; a < side; ++a)
      for (std::size_t b = 0; b < side; ++b) {
        const double x[2] = {static_cast<double>(a) * step, static_cast<double>(b) * step};
        out.push_back(problem.evaluate(x));
      }
    return out;
  }
  const auto inputs = scrambled_sobol(size, problem.p, rng);
  out.reserve(size);
  for (std::size_t i = 0; i < inputs.size(); ++i) out.push_back(problem.evaluate(inputs[i]));
  return out;
}

std::vector<std::size_t> record_sizes(std::size_t n0, std::size_t n, std::size_t every) {
  if (every == 0) throw UsageError("record_sizes: step must be positive");
  std::vector<std::size_t> out;
  for (std::size_t k = n0; k < n; k += every) out.push_back(k);
  out.push_back(n);
  return out;
}

bool is_sequential_method(const std::string& m) { return m == "greedy" || m == "ei"; }

bool is_bench_method(const std::string& m) {
  return is_sequential_method(m) || m == "random_lhd" || m == "maximin_lhd";
}

std::vector<BenchRow> bench_replication(const RunConfig& config, const Problem& problem,
                                        const PointSet& reference,
                                        const std::string& method, std::uint64_t seed) {
  if (!is_bench_method(method)) throw UsageError("unknown bench method '" + method + "'");
  const auto sizes = record_sizes(config.engine.n0, config.engine.n, config.record_every);
  std::vector<BenchRow> rows;

  if (is_sequential_method(method)) {
    EngineConfig ec = config.engine;
    ec.method = parse_method(method);
    ec.seed = seed;
    const auto run = run_osfd(problem.evaluate, problem.p, problem.q, ec);
    if (run.error) throw EvaluatorError(*run.error);
    for (auto k : sizes) {
      if (k > run.design.size()) break;
      rows.push_back({method, seed, k, fill_distance(reference, run.design.outputs.prefix(k))});
    }
    return rows;
  }

  // A fresh input-space design for every recorded size.
  SeededRng rng(seed);
  for (auto k : sizes) {
    SeededRng local = rng.split();
    const PointSet inputs = method == "random_lhd"
                                ? random_lhd(k, problem.p, local)
                                : maximin_lhd(k, problem.p, local, config.engine.maximin_iters);
    PointSet outputs(problem.q);
    outputs.reserve(k);
    for (std::size_t i = 0; i < inputs.size(); ++i) outputs.push_back(problem.evaluate(inputs[i]));
    rows.push_back({method, seed, k, fill_distance(reference, outputs)});
  }
  return rows;
}

std::size_t default_threads() {
  if (const char* env = std::getenv("OSFD_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<BenchRow> run_bench(const RunConfig& config, std::size_t reps,
                                const std::vector<std::string>& methods,
                                std::size_t threads) {
  if (config.is_subprocess())
    throw UsageError("bench: needs a builtin problem to build a reference set");
  if (reps == 0) throw UsageError("bench: reps must be >= 1");
  for (const auto& m : methods)
    if (!is_bench_method(m)) throw UsageError("unknown bench method '" + m + "'");
  const Problem problem = make_problem(config.problem);
  const PointSet reference = reference_set(problem, config.reference_size);

  struct Job {
    std::string method;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& m : methods)
    for (std::uint64_t s = 1; s <= reps; ++s) jobs.push_back({m, s});

  std::vector<std::vector<BenchRow>> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
      try {
        results[j] = bench_replication(config, problem, reference, jobs[j].method, jobs[j].seed);
      } catch (const std::exception& e) {
        errors[j] = e.what();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, jobs.size());
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (const auto& e : errors)
    if (!e.empty()) throw EvaluatorError("bench: " + e);

  std::vector<BenchRow> rows;
  for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.method, a.seed, a.n) < std::tie(b.method, b.seed, b.n);
  });
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "method,seed,n,fill\n";
  for (const auto& r : rows)
    out += r.method + "," + std::to_string(r.seed) + "," + std::to_string(r.n) + "," +
           format_double(r.fill) + "\n";
  return out;
}

}  // namespace osfd
