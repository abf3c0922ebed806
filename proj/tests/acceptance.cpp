// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "oracles.hpp"
#include "osfd/approx.hpp"
#include "osfd/bench.hpp"
#include "osfd/cli.hpp"
#include "osfd/engine.hpp"
#include "osfd/filldist.hpp"
#include "osfd/geometry.hpp"
#include "osfd/io.hpp"
#include "osfd/perturb.hpp"
#include "osfd/sampling.hpp"
#include "osfd/subprocess.hpp"

using namespace osfd;
namespace fs = std::filesystem;

namespace {

// Thresholds.
constexpr double kA1Ratio = 0.6;
constexpr double kA1Seconds = 120.0;
constexpr double kA3Ratio = 0.8;
constexpr double kA3Corner = 0.04;
constexpr double kA6RelErr = 0.01;
constexpr double kA6MinU = -3.0;
constexpr int kA6Draws = 1000000;
constexpr double kAxialTol = 1e-10;
constexpr double kMidpointTol = 1e-12;
constexpr double kTangentTol = 1e-10;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  const std::size_t h = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + h, v.end());
  if (v.size() % 2) return v[h];
  const double hi = v[h];
  return 0.5 * (hi + *std::max_element(v.begin(), v.begin() + h));
}

// Mean fill at size n per method.
std::map<std::string, double> bench_means(const std::string& problem, std::size_t n,
                                          std::size_t n0, std::size_t reps,
                                          const std::vector<std::string>& methods) {
  RunConfig rc = parse_run_config(json{{"problem", problem}, {"n", n}, {"n0", n0}});
  rc.record_every = n - n0;
  const auto rows = run_bench(rc, reps, methods, default_threads());
  std::map<std::string, std::vector<double>> fills;
  for (const auto& r : rows)
    if (r.n == n) fills[r.method].push_back(r.fill);
  std::map<std::string, double> out;
  for (const auto& [m, v] : fills) out[m] = mean(v);
  return out;
}

Verdict a1() {
  const auto t0 = std::chrono::steady_clock::now();
  auto m = bench_means("inverse_radius:eps=0.1", 150, 10, 20, {"greedy", "ei", "random_lhd"});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double lhd = m["random_lhd"];
  const bool ok = m["greedy"] <= kA1Ratio * lhd && m["ei"] <= kA1Ratio * lhd && secs < kA1Seconds;
  return {ok, "mean fill greedy=" + fmt("%.4f", m["greedy"]) + " ei=" + fmt("%.4f", m["ei"]) +
                  " random_lhd=" + fmt("%.4f", lhd) + " (limit " + fmt("%.4f", kA1Ratio * lhd) +
                  "), " + fmt("%.1f", secs) + " s"};
}

Verdict a2() {
  auto m = bench_means("exponential:alpha=10", 300, 50, 10, {"greedy", "ei", "random_lhd"});
  const double lhd = m["random_lhd"];
  return {m["greedy"] < lhd && m["ei"] < lhd,
          "mean fill greedy=" + fmt("%.4f", m["greedy"]) + " ei=" + fmt("%.4f", m["ei"]) +
              " random_lhd=" + fmt("%.4f", lhd)};
}

Verdict a3() {
  const auto problem = make_problem("exponential:alpha=100");
  const auto reference = reference_set(problem, 100000);
  std::vector<double> greedy, ei;
  std::size_t found = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    EngineConfig c;
    c.n = 300;
    c.n0 = 30;
    c.seed = seed;
    c.method = Method::kGreedy;
    greedy.push_back(fill_distance(reference, run_osfd(problem.evaluate, 2, 3, c).design.outputs));
    c.method = Method::kEi;
    const auto run = run_osfd(problem.evaluate, 2, 3, c);
    ei.push_back(fill_distance(reference, run.design.outputs));
    for (std::size_t i = 0; i < run.design.size(); ++i) {
      if (run.design.inputs[i][0] <= kA3Corner && run.design.inputs[i][1] <= kA3Corner) {
        ++found;
        break;
      }
    }
  }
  const double g = mean(greedy), e = mean(ei);
  return {e <= kA3Ratio * g && found == 10,
          "mean fill ei=" + fmt("%.4f", e) + " greedy=" + fmt("%.4f", g) + " (ratio " +
              fmt("%.3f", e / g) + "), ei runs reaching the active corner: " +
              std::to_string(found) + "/10"};
}

Verdict a4() {
  const auto problem = make_problem("robot_arm");
  const auto targets = reference_set(problem, 100030);
  std::vector<double> osfd_med, isfd_med;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    EngineConfig c;
    c.n = 300;
    c.n0 = 30;
    c.seed = seed;
    c.init = InitKind::kMaximinLhd;
    const auto run = run_osfd(problem.evaluate, 8, 2, c);
    osfd_med.push_back(median(nearest_distances(targets, run.design.outputs)));

    SeededRng master(seed);
    SeededRng local = master.split();
    const auto inputs = maximin_lhd(300, 8, local, c.maximin_iters);
    PointSet outputs(2);
    for (std::size_t i = 0; i < inputs.size(); ++i) outputs.push_back(problem.evaluate(inputs[i]));
    isfd_med.push_back(median(nearest_distances(targets, outputs)));
    per_seed += " " + fmt("%.3f", osfd_med.back()) + "/" + fmt("%.3f", isfd_med.back());
  }
  const double o = mean(osfd_med), i = mean(isfd_med);
  return {o < i, "median delta greedy=" + fmt("%.4f", o) + " maximin_lhd=" + fmt("%.4f", i) +
                     " (per seed" + per_seed + ")"};
}

Verdict a5() {
  SeededRng rng(2024);
  int matched = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t q = 1 + rng.below(4);
    const std::size_t m = 1 + rng.below(50);
    const std::size_t n = 1 + rng.below(5000);
    const auto outs = oracle::random_set(m, q, rng);
    const auto ref = oracle::random_set(n, q, rng, 1.5);
    const bool fill_ok = fill_distance(ref, outs) == oracle::fill(ref, outs);
    const bool local_ok = local_fill_distances(outs, ref).local == oracle::local_fill(outs, ref);
    matched += fill_ok && local_ok;
  }
  return {matched == 50, std::to_string(matched) + "/50 instances bit-identical"};
}

Verdict a6() {
  SeededRng rng(77);
  const boost::math::normal_distribution<double> normal;
  double worst = 0.0;
  int done = 0;
  while (done < 20) {
    const std::size_t p = 1 + rng.below(4);
    const auto inputs = oracle::random_set(2 + rng.below(20), p, rng);
    std::vector<double> h(inputs.size());
    for (auto& v : h) v = rng.uniform();
    const auto model = EiModel::fit(inputs, h);
    if (model.sigma2 <= 0.0) continue;
    const auto x = oracle::random_set(1, p, rng);
    const auto nn = oracle::knn(x[0], inputs, 1);
    const double s = std::sqrt(model.sigma2 * oracle::dist(x[0], inputs[nn[0]]));
    if (s == 0.0 || (h[nn[0]] - model.h_max) / s < kA6MinU) continue;

    // Stratified normal draws through the inverse CDF.
    double acc = 0.0;
    for (int i = 0; i < kA6Draws; ++i) {
      const double u = (i + rng.uniform()) / kA6Draws;
      const double z = boost::math::quantile(normal, std::clamp(u, 1e-300, 1.0 - 1e-16));
      acc += std::max(0.0, h[nn[0]] + s * z - model.h_max);
    }
    const double mc = acc / kA6Draws;
    const double ei = expected_improvement(x[0], inputs, model);
    worst = std::max(worst, std::abs(ei - mc) / mc);
    ++done;
  }
  return {worst < kA6RelErr, "worst relative error " + fmt("%.2e", worst) + " over 20 instances"};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("osfd_accept_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run_cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "osfd");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream o, log;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), o, log);
  if (out) *out = o.str();
  return code;
}

Verdict a7() {
  TempDir dir;
  const auto cfg = dir.path / "c.json";
  const std::string state = (dir.path / "s.json").string();
  write_file_atomic(cfg, json{{"problem", "inverse_radius"}, {"n", 60}, {"n0", 10},
                              {"method", "ei"}, {"seed", 7}}.dump());
  bool ok = run_cli({"run", "--config", cfg.string(), "--out", (dir.path / "a.csv").string()}) == 0 &&
            run_cli({"run", "--config", cfg.string(), "--out", (dir.path / "b.csv").string()}) == 0;
  const bool same_runs = ok && read_file(dir.path / "a.csv") == read_file(dir.path / "b.csv");

  const auto problem = make_problem("inverse_radius");
  ok = run_cli({"step", "--state", state, "init", "--config", cfg.string()}) == 0;
  for (int i = 0; ok && i < 60; ++i) {
    std::string line;
    ok = run_cli({"step", "--state", state, "next"}, &line) == 0;
    if (!ok) break;
    const auto x = parse_decimals(line);
    std::vector<std::string> args{"step", "--state", state, "tell"};
    for (double v : problem.evaluate(x)) args.push_back(format_double(v));
    ok = run_cli(args) == 0;
  }
  ok = ok && run_cli({"step", "--state", state, "export", "--out", (dir.path / "s.csv").string()}) == 0;
  const bool same_step = ok && read_file(dir.path / "s.csv") == read_file(dir.path / "a.csv");
  return {same_runs && same_step, std::string("repeat run ") + (same_runs ? "identical" : "differs") +
                                      ", ask/tell " + (same_step ? "identical" : "differs")};
}

Verdict a8() {
  std::vector<std::string> failed;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok && std::find(failed.begin(), failed.end(), what) == failed.end()) failed.push_back(what);
  };
  SeededRng rng(8);

  for (std::size_t n : {2u, 10u, 150u})
    for (std::size_t p : {1u, 2u, 8u}) {
      const auto d = random_lhd(n, p, rng);
      for (std::size_t k = 0; k < p; ++k) {
        std::vector<std::size_t> strata;
        for (std::size_t i = 0; i < n; ++i)
          strata.push_back(static_cast<std::size_t>(d[i][k] * static_cast<double>(n)));
        std::sort(strata.begin(), strata.end());
        for (std::size_t i = 0; i < n; ++i) check(strata[i] == i, "LHD stratification");
      }
    }

  for (int t = 0; t < 200; ++t) {
    const std::size_t q = 1 + rng.below(4);
    const std::size_t k = 1 + rng.below(q);
    const auto v = oracle::random_set(k + 1, q, rng);
    const auto c = simplex_centroid(v, k);
    const auto ax = axial_points(v, k);
    const double f = 0.5 + 1.5 / static_cast<double>(k);
    for (std::size_t j = 0; j <= k; ++j)
      for (std::size_t d = 0; d < q; ++d)
        check(std::abs(ax[j][d] - c[d] + f * (v[j][d] - c[d])) < kAxialTol, "axial identity");
  }

  for (int t = 0; t < 10; ++t) {
    const auto outs = oracle::random_set(20, 2, rng);
    const auto a = approx_gen(outs, 2, 2, rng);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      if (a.tags[i] != ApproxTag::kMidpoint) continue;
      bool found = false;
      for (std::size_t u = 0; u < outs.size() && !found; ++u)
        for (std::size_t w = u + 1; w < outs.size() && !found; ++w) {
          const double mid[2] = {0.5 * (outs[u][0] + outs[w][0]), 0.5 * (outs[u][1] + outs[w][1])};
          if (mid[0] == a.points[i][0] && mid[1] == a.points[i][1]) {
            found = true;
            check(std::abs(distance(a.points[i], outs[u]) - distance(a.points[i], outs[w])) < kMidpointTol,
                  "midpoint equidistance");
          }
        }
      check(found, "midpoint equidistance");
    }
  }

  for (int t = 0; t < 200; ++t) {
    const std::size_t q = 2 + rng.below(3);
    const std::size_t p = 1 + rng.below(q - 1);
    const auto y = oracle::random_set(1, q, rng);
    const auto nb = oracle::random_set(p, q, rng);
    const auto tb = tangent_basis(y[0], nb, p);
    const double r = 0.05 + rng.uniform();
    const auto ball = uniform_ball(50, y[0], r, rng, tb.directions);
    for (std::size_t i = 0; i < ball.size(); ++i) {
      Point d(q);
      for (std::size_t k = 0; k < q; ++k) d[k] = ball[i][k] - y[0][k];
      Point res = d;
      for (const auto& e : tb.directions) {
        double dot = 0.0;
        for (std::size_t k = 0; k < q; ++k) dot += d[k] * e[k];
        for (std::size_t k = 0; k < q; ++k) res[k] -= dot * e[k];
      }
      double norm = 0.0;
      for (double c : res) norm += c * c;
      check(std::sqrt(norm) < kTangentTol * r, "tangent residual");
    }
  }

  for (const char* name : {"inverse_radius", "exponential:alpha=100", "easom:p=3", "robot_arm"}) {
    const auto problem = make_problem(name);
    for (Method m : {Method::kGreedy, Method::kEi}) {
      EngineConfig c;
      c.n = 120;
      c.n0 = 10;
      c.method = m;
      c.seed = 3;
      const auto run = run_osfd(problem.evaluate, problem.p, problem.q, c);
      std::set<std::vector<double>> seen;
      for (std::size_t i = 0; i < run.design.size(); ++i) {
        for (double v : run.design.inputs[i]) check(v >= 0.0 && v <= 1.0, "unit-cube containment");
        check(seen.insert(run.design.inputs.row(i)).second, "distinct inputs");
      }
    }
  }

  std::string detail = "LHD, axial, midpoint, tangent, containment, distinctness";
  if (!failed.empty()) {
    detail = "failed:";
    for (const auto& f : failed) detail += " [" + f + "]";
  }
  return {failed.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4},
      {"A5", a5}, {"A6", a6}, {"A7", a7}, {"A8", a8}};
  int failures = 0;
  for (const auto& [id, fn] : criteria) {
    Verdict v{false, ""};
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s %s  %s\n", id.c_str(), v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
