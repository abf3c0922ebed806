#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "osfd/design.hpp"
#include "osfd/engine.hpp"

namespace osfd {

using nlohmann::json;

/// Run description shared by the run, bench and step commands.
struct RunConfig {
  std::string problem;   // builtin spec or "subprocess:<command>"
  std::size_t p = 0;
  std::size_t q = 0;
  EngineConfig engine;
  std::size_t record_every = 10;        // bench: fill recorded every k points
  std::size_t reference_size = 100000;  // bench: reference sample size

  bool is_subprocess() const { return problem.rfind("subprocess:", 0) == 0; }
  std::string subprocess_command() const { return problem.substr(11); }
};

/// Parses and validates a config document. Builtin problems fill in p and q
/// (explicit values must agree); subprocess problems require both.
RunConfig parse_run_config(const json& doc);
RunConfig load_run_config(const std::filesystem::path& path);

json engine_config_to_json(const EngineConfig& c);
EngineConfig engine_config_from_json(const json& doc);

json snapshot_to_json(const EngineSnapshot& s);
EngineSnapshot snapshot_from_json(const json& doc);

/// Decimal text that parses back to the same double.
std::string format_double(double v);

/// Writes `x1..xp,y1..yq` with 17 significant digits per value.
void write_design_csv(const std::filesystem::path& path, const Design& design);
std::string design_csv(const Design& design);

/// Reads a design CSV; the split between inputs and outputs comes from the
/// x/y header prefixes.
Design read_design_csv(const std::filesystem::path& path);

/// Reads a point set from CSV. When the header has y-columns only those are
/// used, otherwise every column.
PointSet read_points_csv(const std::filesystem::path& path);
void write_points_csv(const std::filesystem::path& path, const PointSet& points,
                      const std::string& prefix = "y");

/// Writes via a temporary sibling and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);
std::string read_file(const std::filesystem::path& path);

}  // namespace osfd
