#pragma once

#include <stdexcept>
#include <string>

namespace molspec {

enum class ErrorCode {
  InvalidArgument,
  Unsupported,
  Layout,
  Numerical,
  Conditioning,
  Truncation,
  Windowing,
  Stiffness,
  RankDeficient,
  PoleProximity,
  Fit,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string operation, const std::string& detail);

  ErrorCode code() const { return code_; }
  const std::string& operation() const { return operation_; }

 private:
  ErrorCode code_;
  std::string operation_;
};

// Truncation failures carry the weight the policy did manage to retain.
class TruncationError : public Error {
 public:
  TruncationError(std::string operation, const std::string& detail, double achieved_weight);
  double achieved_weight() const { return achieved_weight_; }

 private:
  double achieved_weight_;
};

[[noreturn]] void fail(ErrorCode code, const char* operation, const std::string& detail);

}  // namespace molspec
