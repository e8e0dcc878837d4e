#include "molspec/error.hpp"

namespace molspec {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Unsupported: return "unsupported-configuration";
    case ErrorCode::Layout: return "layout";
    case ErrorCode::Numerical: return "numerical";
    case ErrorCode::Conditioning: return "conditioning";
    case ErrorCode::Truncation: return "truncation";
    case ErrorCode::Windowing: return "windowing";
    case ErrorCode::Stiffness: return "stiffness";
    case ErrorCode::RankDeficient: return "rank-deficient";
    case ErrorCode::PoleProximity: return "pole-proximity";
    case ErrorCode::Fit: return "fit";
  }
  return "unknown";
}

Error::Error(ErrorCode code, std::string operation, const std::string& detail)
    : std::runtime_error(operation + ": " + detail), code_(code), operation_(std::move(operation)) {}

TruncationError::TruncationError(std::string operation, const std::string& detail,
                                 double achieved_weight)
    : Error(ErrorCode::Truncation, std::move(operation), detail), achieved_weight_(achieved_weight) {}

void fail(ErrorCode code, const char* operation, const std::string& detail) {
  throw Error(code, operation, detail);
}

}  // namespace molspec
