#pragma once

#include <stdexcept>
#include <string>

namespace acp {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  RealityViolation,
  NotNormal,
  Singular,
  AtCenter,
  StructureMismatch,
  NotSelfAdjoint,
  NotSelfTau,
  TooFarFromGroup,
  EmptyInput,
  Parse,
  Validation,
  Io,
};

const char* to_string(ErrorCode code);

// Thrown by every library operation; the code is what the C layer reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace acp
