#include "osfd/testbed.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "osfd/errors.hpp"

namespace osfd {

namespace {

void require_dim(std::span<const double> x, std::size_t n, const char* what) {
  if (x.size() != n)
    throw UsageError(std::string(what) + ": expected " + std::to_string(n) +
                     " inputs, got " + std::to_string(x.size()));
}

}  // namespace

Point inverse_radius(std::span<const double> x, double eps) {
  require_dim(x, 2, "inverse_radius");
  if (!(eps > 0.0)) throw UsageError("inverse_radius: eps must be positive");
  const double r = 1.0 / std::sqrt(x[0] * x[0] + x[1] * x[1] + eps * eps);
  return {r, std::atan2(x[1], x[0])};
}

Point exponential(std::span<const double> x, double alpha) {
  require_dim(x, 2, "exponential");
  Point y(3);
  double a = alpha;
  for (auto& v : y) {
    v = std::exp(-a * x[0]) + std::exp(-a * x[1]);
    a *= 2.0;
  }
  return y;
}

Point easom(std::span<const double> x) {
  if (x.empty()) throw UsageError("easom: need at least one input");
  const double p = static_cast<double>(x.size());
  const double pi = std::numbers::pi;
  double prod = 1.0;
  for (double xi : x) {
    const double t = 2.0 * xi - 1.0;
    prod *= std::cos(2.0 * pi * xi) * std::exp(-pi * pi * t * t / p);
  }
  return {prod};
}

Point robot_arm(std::span<const double> u) {
  require_dim(u, 8, "robot_arm");
  double angle = 0.0;
  double ux = 0.0;
  double vy = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    angle += 2.0 * std::numbers::pi * u[4 + i];
    ux += u[i] * std::cos(angle);
    vy += u[i] * std::sin(angle);
  }
  return {ux, vy};
}

namespace {

// "name:key=value,key=value" -> (name, {key: value})
std::pair<std::string, std::map<std::string, double>> parse_spec(
    const std::string& spec) {
  const auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  std::map<std::string, double> params;
  if (colon == std::string::npos) return {name, params};
  std::string rest = spec.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto comma = rest.find(',', pos);
    const auto item = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("problem '" + spec + "': expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != val.size() || val.empty() || !std::isfinite(v))
      throw UsageError("problem '" + spec + "': bad value for " + key);
    params[key] = v;
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return {name, params};
}

double take(std::map<std::string, double>& params, const std::string& key,
            double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = it->second;
  params.erase(it);
  return v;
}

}  // namespace

Problem make_problem(const std::string& spec) {
  auto [family, params] = parse_spec(spec);
  Problem prob;
  prob.family = family;
  if (family == "inverse_radius") {
    const double eps = take(params, "eps", 0.1);
    if (!(eps > 0.0)) throw UsageError("inverse_radius: eps must be positive");
    prob.p = 2;
    prob.q = 2;
    prob.param = eps;
    prob.evaluate = [eps](std::span<const double> x) { return inverse_radius(x, eps); };
  } else if (family == "exponential") {
    const double alpha = take(params, "alpha", 10.0);
    prob.p = 2;
    prob.q = 3;
    prob.param = alpha;
    prob.evaluate = [alpha](std::span<const double> x) { return exponential(x, alpha); };
  } else if (family == "easom") {
    const double p = take(params, "p", 2.0);
    if (!(p >= 1.0) || p != std::floor(p) || p > 1000.0)
      throw UsageError("easom: p must be a positive integer");
    prob.p = static_cast<std::size_t>(p);
    prob.q = 1;
    prob.evaluate = [](std::span<const double> x) { return easom(x); };
  } else if (family == "robot_arm") {
    prob.p = 8;
    prob.q = 2;
    prob.evaluate = [](std::span<const double> x) { return robot_arm(x); };
  } else {
    throw UsageError("unknown problem '" + family + "'");
  }
  if (!params.empty())
    throw UsageError("problem '" + spec + "': unknown parameter '" +
                     params.begin()->first + "'");
  prob.name = spec;
  return prob;
}

}  // namespace osfd
