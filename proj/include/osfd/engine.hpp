#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osfd/design.hpp"
#include "osfd/filldist.hpp"
#include "osfd/rng.hpp"
#include "osfd/testbed.hpp"

namespace osfd {

enum class Method { kGreedy, kEi };
enum class InitKind { kRandomLhd, kMaximinLhd };

std::string to_string(Method m);
std::string to_string(InitKind k);
Method parse_method(const std::string& s);
InitKind parse_init(const std::string& s);

struct EngineConfig {
  std::size_t n = 0;
  std::size_t n0 = 0;
  Method method = Method::kGreedy;
  std::uint64_t seed = 0;
  InitKind init = InitKind::kRandomLhd;
  bool scale_outputs = true;
  std::optional<std::size_t> k1;
  std::optional<std::size_t> k2;
  std::optional<double> stop_fill;
  std::size_t maximin_iters = 1000;

  /// Throws UsageError unless 2 <= n0 <= n and n0 >= min(p, q) + 1.
  void validate(std::size_t p, std::size_t q) const;
};

struct TraceEntry {
  std::size_t i_star = 0;
  double fill = 0.0;       // global fill estimate before the step
  bool fallback = false;   // perturbation used its fallback rule
};

/// Serializable engine state (see io.hpp for the JSON form).
struct EngineSnapshot {
  std::size_t p = 0;
  std::size_t q = 0;
  EngineConfig config;
  PointSet inputs;
  PointSet outputs;
  std::optional<Point> pending;
  std::optional<TraceEntry> pending_trace;
  std::string rng;
  std::vector<TraceEntry> trace;
  bool stopped = false;
};

/// Initial design for a config: random or maximin LHD drawn from `rng`.
PointSet initial_design(const EngineConfig& config, std::size_t p, SeededRng& rng);

/// Ask/tell driver of the sequential output-space-filling loop.
///
/// The first n0 asks return the initial design rows in order. Later asks
/// scale the current outputs to the unit box (when enabled), build the
/// approximating set, locate the largest local gap and perturb its input with
/// the configured method. At most one proposal is outstanding.
class Engine {
 public:
  Engine(std::size_t p, std::size_t q, EngineConfig config);

  static Engine restore(const EngineSnapshot& snap);
  EngineSnapshot snapshot() const;

  /// Next input to evaluate, or nullopt when the stop_fill threshold was met
  /// (the engine is then complete). Throws ProtocolError when a proposal is
  /// pending or the design is complete.
  std::optional<Point> ask();

  /// Records the output for the pending input. Throws ProtocolError without a
  /// pending input and UsageError for a wrong-sized or non-finite output; the
  /// pending input is kept in the latter case.
  void tell(std::span<const double> y);

  bool complete() const;
  bool has_pending() const { return pending_.has_value(); }
  const std::optional<Point>& pending() const { return pending_; }

  const Design& design() const { return design_; }
  const EngineConfig& config() const { return config_; }
  const std::vector<TraceEntry>& trace() const { return trace_; }
  bool stopped_early() const { return stopped_; }

  /// Fill record behind the most recent sequential proposal.
  const std::optional<FillRecord>& last_record() const { return last_record_; }

 private:
  Engine() = default;

  std::size_t p_ = 0;
  std::size_t q_ = 0;
  EngineConfig config_;
  Design design_;
  PointSet initial_;
  SeededRng rng_;
  std::optional<Point> pending_;
  std::optional<TraceEntry> pending_trace_;
  std::vector<TraceEntry> trace_;
  std::optional<FillRecord> last_record_;
  bool stopped_ = false;
};

struct RunResult {
  Design design;
  std::vector<TraceEntry> trace;
  std::vector<double> step_seconds;  // wall time per sequential step
  bool stopped_early = false;
  std::optional<std::string> error;  // evaluator failure; design is partial
};

/// Runs the full loop against an in-process evaluator.
RunResult run_osfd(const Evaluator& evaluator, std::size_t p, std::size_t q,
                   const EngineConfig& config);

}  // namespace osfd
