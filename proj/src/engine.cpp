#include "osfd/engine.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "osfd/approx.hpp"
#include "osfd/perturb.hpp"
#include "osfd/sampling.hpp"

namespace osfd {

std::string to_string(Method m) { return m == Method::kGreedy ? "greedy" : "ei"; }

std::string to_string(InitKind k) {
  return k == InitKind::kRandomLhd ? "random_lhd" : "maximin_lhd";
}

Method parse_method(const std::string& s) {
  if (s == "greedy") return Method::kGreedy;
  if (s == "ei") return Method::kEi;
  throw UsageError("unknown method '" + s + "' (expected greedy or ei)");
}

InitKind parse_init(const std::string& s) {
  if (s == "random_lhd") return InitKind::kRandomLhd;
  if (s == "maximin_lhd") return InitKind::kMaximinLhd;
  throw UsageError("unknown init '" + s + "' (expected random_lhd or maximin_lhd)");
}

void EngineConfig::validate(std::size_t p, std::size_t q) const {
  if (p == 0 || q == 0) throw UsageError("config: p and q must be >= 1");
  if (n0 < 2) throw UsageError("config: n0 must be >= 2");
  if (n0 > n) throw UsageError("config: n0 must not exceed n");
  if (n0 < approx_min_outputs(p, q))
    throw UsageError("config: n0 must be >= min(p, q) + 1 = " +
                     std::to_string(approx_min_outputs(p, q)));
  if (k1 && *k1 == 0) throw UsageError("config: k1 must be >= 1");
  if (k2 && *k2 == 0) throw UsageError("config: k2 must be >= 1");
  if (stop_fill && !(*stop_fill >= 0.0)) throw UsageError("config: stop_fill must be >= 0");
  if (maximin_iters == 0) throw UsageError("config: maximin_iters must be >= 1");
}

PointSet initial_design(const EngineConfig& config, std::size_t p, SeededRng& rng) {
  return config.init == InitKind::kRandomLhd
             ? random_lhd(config.n0, p, rng)
             : maximin_lhd(config.n0, p, rng, config.maximin_iters);
}

namespace {

// The initial design draws from a child stream so that restoring a state only
// needs the seed plus the main stream position.
struct Streams {
  PointSet initial;
  SeededRng main;
};

Streams make_streams(const EngineConfig& config, std::size_t p) {
  SeededRng master(config.seed);
  SeededRng init_rng = master.split();
  return {initial_design(config, p, init_rng), master};
}

}  // namespace

Engine::Engine(std::size_t p, std::size_t q, EngineConfig config)
    : p_(p), q_(q), config_(std::move(config)), design_(p, q) {
  config_.validate(p_, q_);
  auto streams = make_streams(config_, p_);
  initial_ = std::move(streams.initial);
  rng_ = streams.main;
}

Engine Engine::restore(const EngineSnapshot& snap) {
  snap.config.validate(snap.p, snap.q);
  Engine e;
  e.p_ = snap.p;
  e.q_ = snap.q;
  e.config_ = snap.config;
  e.design_ = Design(snap.p, snap.q);
  if (snap.inputs.size() != snap.outputs.size())
    throw UsageError("state: inputs and outputs differ in length");
  if (snap.inputs.size() > snap.config.n)
    throw UsageError("state: design larger than n");
  for (std::size_t i = 0; i < snap.inputs.size(); ++i)
    e.design_.append(snap.inputs[i], snap.outputs[i]);
  e.initial_ = make_streams(e.config_, e.p_).initial;
  e.rng_ = SeededRng::deserialize(snap.rng);
  e.pending_ = snap.pending;
  if (e.pending_ && e.pending_->size() != e.p_)
    throw UsageError("state: pending input has wrong dimension");
  e.pending_trace_ = snap.pending_trace;
  e.trace_ = snap.trace;
  e.stopped_ = snap.stopped;
  if (e.design_.size() >= 2 && e.config_.scale_outputs)
    e.design_.scale = ScaleRecord::fit(e.design_.outputs);
  return e;
}

EngineSnapshot Engine::snapshot() const {
  EngineSnapshot s;
  s.p = p_;
  s.q = q_;
  s.config = config_;
  s.inputs = design_.inputs;
  s.outputs = design_.outputs;
  s.pending = pending_;
  s.pending_trace = pending_trace_;
  s.rng = rng_.serialize();
  s.trace = trace_;
  s.stopped = stopped_;
  return s;
}

bool Engine::complete() const {
  return stopped_ || design_.size() >= config_.n;
}

std::optional<Point> Engine::ask() {
  if (pending_) throw ProtocolError("ask: a proposal is already pending");
  if (complete()) throw ProtocolError("ask: design is complete");

  const std::size_t m = design_.size();
  if (m < config_.n0) {
    pending_ = initial_.row(m);
    return pending_;
  }

  PointSet outputs = design_.outputs;
  if (config_.scale_outputs) {
    design_.scale = ScaleRecord::fit(design_.outputs);
    outputs = design_.scale.apply(design_.outputs);
  }
  const auto approx = approx_gen(outputs, p_, q_, rng_, config_.k1);
  auto record = local_fill_distances(outputs, approx);
  if (config_.stop_fill && record.global < *config_.stop_fill) {
    stopped_ = true;
    last_record_ = std::move(record);
    return std::nullopt;
  }

  const Proposal next =
      config_.method == Method::kGreedy
          ? greedy_perturbation(design_.inputs, record.i_star, rng_, config_.k2)
          : ei_perturbation(design_.inputs, record, rng_, config_.k2);
  pending_ = next.x;
  pending_trace_ = TraceEntry{record.i_star, record.global, next.fallback};
  last_record_ = std::move(record);
  return pending_;
}

void Engine::tell(std::span<const double> y) {
  if (!pending_) throw ProtocolError("tell: no pending input");
  if (y.size() != q_)
    throw UsageError("tell: expected " + std::to_string(q_) + " outputs, got " +
                     std::to_string(y.size()));
  for (double v : y)
    if (!std::isfinite(v)) throw UsageError("tell: output is not finite");
  design_.append(*pending_, y);
  pending_.reset();
  if (pending_trace_) {
    trace_.push_back(*pending_trace_);
    pending_trace_.reset();
  }
}

RunResult run_osfd(const Evaluator& evaluator, std::size_t p, std::size_t q,
                   const EngineConfig& config) {
  using Clock = std::chrono::steady_clock;
  Engine engine(p, q, config);
  RunResult result;
  while (!engine.complete()) {
    const auto start = Clock::now();
    const auto x = engine.ask();
    if (!x) break;
    Point y;
    try {
      y = evaluator(*x);
    } catch (const std::exception& e) {
      result.error = std::string("evaluator failed: ") + e.what();
      break;
    }
    try {
      engine.tell(y);
    } catch (const UsageError& e) {
      result.error = std::string("evaluator output rejected: ") + e.what();
      break;
    }
    if (engine.design().size() > config.n0)
      result.step_seconds.push_back(
          std::chrono::duration<double>(Clock::now() - start).count());
  }
  result.design = engine.design();
  result.trace = engine.trace();
  result.stopped_early = engine.stopped_early();
  return result;
}

}  // namespace osfd
