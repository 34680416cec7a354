#pragma once

#include <stdexcept>
#include <string>

namespace metric_depth {

enum class ErrorKind {
  InvalidDistance,
  InsufficientSample,
  InvalidAdjustment,
  InvalidBudget,
  InvalidArgument,
  IncompatibleCurves,
  UnsupportedGrid,
  RankDeficient,
  Validation,
  Parse,
  InfeasibleRegion,
  Usage,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; `kind()` lets callers (and the CLI
// exit-code mapping) distinguish input problems from runtime failures.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // True for errors caused by malformed or inconsistent input.
  bool is_validation() const noexcept;

 private:
  ErrorKind kind_;
};

}  // namespace metric_depth
