#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace devratio {

enum class ErrorCode {
  InvalidInput,
  PathExplosion,
  InfeasibleFlow,
  NonMonotonePerceived,
  NotConverged,
  NotCommonSource,
  NotInducible,
  TooLarge,
  ConstructionFailed,
  AlphaOutOfRange,
  GammaOutOfRange,
  EpsilonOutOfRange,
  MuTooLarge,
  Unbounded,
  DemandNotNormalized,
  NoValidSplit,
  PreconditionUnmet,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace devratio
