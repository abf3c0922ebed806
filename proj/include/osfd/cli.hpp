#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace osfd::cli {

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kEvaluator = 3,
  kProtocol = 4,
};

int cmd_run(const std::filesystem::path& config, const std::filesystem::path& out,
            std::ostream& log);
int cmd_bench(const std::filesystem::path& config, std::size_t reps,
              const std::vector<std::string>& methods, const std::filesystem::path& out,
              std::ostream& log);
int cmd_eval_fill(const std::filesystem::path& design,
                  const std::filesystem::path& reference, std::ostream& out,
                  std::ostream& log);
int cmd_reference(const std::filesystem::path& config, const std::filesystem::path& out,
                  std::size_t size, std::ostream& log);

int cmd_step_init(const std::filesystem::path& state, const std::filesystem::path& config,
                  std::ostream& log);
int cmd_step_next(const std::filesystem::path& state, std::ostream& out, std::ostream& log);
int cmd_step_tell(const std::filesystem::path& state, const std::vector<std::string>& values,
                  std::ostream& log);
int cmd_step_export(const std::filesystem::path& state, const std::filesystem::path& out,
                    std::ostream& log);

/// Parses argv and dispatches to the commands above.
int main(int argc, char** argv, std::ostream& out, std::ostream& log);

}  // namespace osfd::cli
