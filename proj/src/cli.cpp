#include "osfd/cli.hpp"

#include <chrono>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "osfd/bench.hpp"
#include "osfd/engine.hpp"
#include "osfd/io.hpp"
#include "osfd/subprocess.hpp"

namespace osfd::cli {

namespace fs = std::filesystem;

namespace {

struct BoundEvaluator {
  Evaluator fn;
  std::shared_ptr<SubprocessEvaluator> child;
};

BoundEvaluator make_evaluator(const RunConfig& rc) {
  if (rc.is_subprocess()) {
    auto child = std::make_shared<SubprocessEvaluator>(rc.subprocess_command(), rc.p, rc.q);
    return {[child](std::span<const double> x) { return (*child)(x); }, child};
  }
  return {make_problem(rc.problem).evaluate, nullptr};
}

// Wraps a command body so that every error class maps to its exit code.
template <typename F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    log << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const EvaluatorError& e) {
    log << "error: " << e.what() << '\n';
    return kEvaluator;
  } catch (const ProtocolError& e) {
    log << "error: " << e.what() << '\n';
    return kProtocol;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kUsage;
  }
}

Engine load_state(const fs::path& state) {
  json doc;
  try {
    doc = json::parse(read_file(state));
  } catch (const json::exception& e) {
    throw UsageError("state " + state.string() + ": " + e.what());
  }
  return Engine::restore(snapshot_from_json(doc));
}

void save_state(const fs::path& state, const Engine& engine) {
  write_file_atomic(state, snapshot_to_json(engine.snapshot()).dump(1) + "\n");
}

}  // namespace

int cmd_run(const fs::path& config, const fs::path& out, std::ostream& log) {
  return guarded(log, [&] {
    const RunConfig rc = load_run_config(config);
    auto eval = make_evaluator(rc);
    const auto result = run_osfd(eval.fn, rc.p, rc.q, rc.engine);
    write_design_csv(out, result.design);

    json trace = json::array();
    for (std::size_t k = 0; k < result.trace.size(); ++k) {
      json t = {{"step", k + 1},
                {"i_star", result.trace[k].i_star},
                {"fill", result.trace[k].fill},
                {"fallback", result.trace[k].fallback}};
      if (k < result.step_seconds.size()) t["seconds"] = result.step_seconds[k];
      trace.push_back(std::move(t));
    }
    json sidecar = {{"problem", rc.problem},
                    {"p", rc.p},
                    {"q", rc.q},
                    {"config", engine_config_to_json(rc.engine)},
                    {"design_size", result.design.size()},
                    {"stopped_early", result.stopped_early},
                    {"trace", std::move(trace)}};
    if (result.error) sidecar["error"] = *result.error;
    fs::path side = out;
    side += ".trace.json";
    write_file_atomic(side, sidecar.dump(1) + "\n");

    if (result.error) {
      log << "error: " << *result.error << " (" << result.design.size()
          << " rows written)\n";
      return static_cast<int>(kEvaluator);
    }
    return static_cast<int>(kOk);
  });
}

int cmd_bench(const fs::path& config, std::size_t reps, const std::vector<std::string>& methods,
              const fs::path& out, std::ostream& log) {
  return guarded(log, [&] {
    const RunConfig rc = load_run_config(config);
    const auto rows = run_bench(rc, reps, methods, default_threads());
    write_file_atomic(out, bench_csv(rows));
    return static_cast<int>(kOk);
  });
}

int cmd_eval_fill(const fs::path& design, const fs::path& reference, std::ostream& out,
                  std::ostream& log) {
  return guarded(log, [&] {
    const Design d = read_design_csv(design);
    const PointSet ref = read_points_csv(reference);
    if (d.size() == 0 || ref.empty()) throw UsageError("eval-fill: empty design or reference");
    if (ref.dim() != d.q)
      throw UsageError("eval-fill: reference has dimension " + std::to_string(ref.dim()) +
                       ", design outputs have " + std::to_string(d.q));
    out << format_double(fill_distance(ref, d.outputs)) << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_reference(const fs::path& config, const fs::path& out, std::size_t size,
                  std::ostream& log) {
  return guarded(log, [&] {
    const RunConfig rc = load_run_config(config);
    if (rc.is_subprocess()) throw UsageError("reference: needs a builtin problem");
    const auto prob = make_problem(rc.problem);
    write_points_csv(out, reference_set(prob, size ? size : rc.reference_size));
    return static_cast<int>(kOk);
  });
}

int cmd_step_init(const fs::path& state, const fs::path& config, std::ostream& log) {
  return guarded(log, [&] {
    const RunConfig rc = load_run_config(config);
    save_state(state, Engine(rc.p, rc.q, rc.engine));
    return static_cast<int>(kOk);
  });
}

int cmd_step_next(const fs::path& state, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    Engine engine = load_state(state);
    const auto x = engine.ask();
    save_state(state, engine);
    if (!x) {
      out << "done\n";
      return static_cast<int>(kOk);
    }
    std::string line;
    for (std::size_t j = 0; j < x->size(); ++j) {
      if (j) line += ' ';
      line += format_double((*x)[j]);
    }
    out << line << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_step_tell(const fs::path& state, const std::vector<std::string>& values,
                  std::ostream& log) {
  return guarded(log, [&] {
    Engine engine = load_state(state);
    if (!engine.has_pending()) throw ProtocolError("tell: no pending input (run next first)");
    std::vector<double> y;
    try {
      for (const auto& v : values) {
        const auto parsed = parse_decimals(v);
        y.insert(y.end(), parsed.begin(), parsed.end());
      }
      engine.tell(y);
    } catch (const UsageError& e) {
      throw ProtocolError(e.what());
    }
    save_state(state, engine);
    return static_cast<int>(kOk);
  });
}

int cmd_step_export(const fs::path& state, const fs::path& out, std::ostream& log) {
  return guarded(log, [&] {
    const Engine engine = load_state(state);
    write_design_csv(out, engine.design());
    return static_cast<int>(kOk);
  });
}

int main(int argc, char** argv, std::ostream& out, std::ostream& log) {
  CLI::App app{"Sequential output space-filling designs", "osfd"};
  app.require_subcommand(1);

  std::string config, out_path, design, reference, state, methods = "greedy,ei,random_lhd";
  std::size_t reps = 20;
  std::size_t ref_size = 0;
  std::vector<std::string> tell_values;

  auto* run = app.add_subcommand("run", "Run a design and write its CSV");
  run->add_option("--config", config, "Run config (JSON)")->required();
  run->add_option("--out", out_path, "Design CSV to write")->required();

  auto* bench = app.add_subcommand("bench", "Compare methods over replications");
  bench->add_option("--config", config, "Run config (JSON)")->required();
  bench->add_option("--reps", reps, "Replications (seeds 1..reps)");
  bench->add_option("--methods", methods,
                    "Comma-separated subset of greedy,ei,random_lhd,maximin_lhd");
  bench->add_option("--out", out_path, "Results CSV to write")->required();

  auto* eval = app.add_subcommand("eval-fill", "Fill distance of a design against a reference");
  eval->add_option("--design", design, "Design CSV")->required();
  eval->add_option("--reference", reference, "Reference CSV")->required();

  auto* ref = app.add_subcommand("reference", "Write a problem's reference set");
  ref->add_option("--config", config, "Run config (JSON)")->required();
  ref->add_option("--out", out_path, "Reference CSV to write")->required();
  ref->add_option("--size", ref_size, "Reference size (default from config)");

  auto* step = app.add_subcommand("step", "Ask/tell stepping with a persisted state");
  step->add_option("--state", state, "State file (JSON)")->required();
  step->require_subcommand(1);
  auto* init = step->add_subcommand("init", "Create a state from a config");
  init->add_option("--config", config, "Run config (JSON)")->required();
  auto* next = step->add_subcommand("next", "Propose the next input");
  auto* tell = step->add_subcommand("tell", "Record the output of the pending input");
  tell->add_option("values", tell_values, "Output values")->required();
  auto* exp = step->add_subcommand("export", "Write the current design CSV");
  exp->add_option("--out", out_path, "Design CSV to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    log << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (*run) return cmd_run(config, out_path, log);
  if (*bench) {
    std::vector<std::string> list;
    std::size_t pos = 0;
    while (pos <= methods.size()) {
      const auto comma = methods.find(',', pos);
      list.push_back(methods.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return cmd_bench(config, reps, list, out_path, log);
  }
  if (*eval) return cmd_eval_fill(design, reference, out, log);
  if (*ref) return cmd_reference(config, out_path, ref_size, log);
  if (*init) return cmd_step_init(state, config, log);
  if (*next) return cmd_step_next(state, out, log);
  if (*tell) return cmd_step_tell(state, tell_values, log);
  if (*exp) return cmd_step_export(state, out_path, log);
  return kUsage;
}

}  // namespace osfd::cli
