#pragma once

#include <stdexcept>
#include <string>

namespace osfd {

// Caller broke a documented precondition (bad arguments, bad config).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The black-box evaluator failed or produced a non-finite output.
class EvaluatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ask/tell called out of order.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace osfd
