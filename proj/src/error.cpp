#include "metric_depth/error.hpp"

namespace metric_depth {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDistance: return "invalid-distance";
    case ErrorKind::InsufficientSample: return "insufficient-sample";
    case ErrorKind::InvalidAdjustment: return "invalid-adjustment";
    case ErrorKind::InvalidBudget: return "invalid-budget";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::IncompatibleCurves: return "incompatible-curves";
    case ErrorKind::UnsupportedGrid: return "unsupported-grid";
    case ErrorKind::RankDeficient: return "rank-deficient";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::InfeasibleRegion: return "infeasible-region";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

bool Error::is_validation() const noexcept {
  // An infeasible rejection region is only detected after sampling, so it is
  // treated as a runtime failure.
  return kind_ != ErrorKind::InfeasibleRegion;
}

}  // namespace metric_depth
