#pragma once

#include <cstddef>
#include <cstdio>
#include <span>
#include <string>
#include <sys/types.h>

#include "osfd/point_set.hpp"

namespace osfd {

/// Long-lived child process used as a black-box evaluator.
///
/// One evaluation writes a line of p space-separated decimals to the child's
/// stdin and reads one line of q space-separated decimals from its stdout.
/// The command runs under /bin/sh -c.
class SubprocessEvaluator {
 public:
  SubprocessEvaluator(const std::string& command, std::size_t p, std::size_t q);
  ~SubprocessEvaluator();

  SubprocessEvaluator(const SubprocessEvaluator&) = delete;
  SubprocessEvaluator& operator=(const SubprocessEvaluator&) = delete;

  /// Throws EvaluatorError on I/O failure, wrong arity or non-numeric output.
  Point operator()(std::span<const double> x);

 private:
  std::size_t p_;
  std::size_t q_;
  pid_t pid_ = -1;
  std::FILE* to_child_ = nullptr;
  std::FILE* from_child_ = nullptr;
};

/// Parses whitespace-separated finite decimals; nullopt-free variant throws
/// UsageError on anything else.
std::vector<double> parse_decimals(const std::string& line);

}  // namespace osfd
