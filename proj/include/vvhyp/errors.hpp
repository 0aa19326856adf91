#ifndef VVHYP_ERRORS_HPP_
#define VVHYP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace vvhyp {

enum class ErrorCode {
  InvalidArgument,
  UnknownModel,
  NotStrictlyHyperbolic,
  NonConvergence,
  BlowUp,
  StepUnderflow,
  GridMismatch,
  NonpositiveTime,
  Divergence,
  ResonantDenominator,
  NewtonStall,
  NonpositiveGap,
  NotScalar,
  NoFlux,
  EmptyTriangle,
  LeftBall,
  SpeedOverlap,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace vvhyp

#endif  // VVHYP_ERRORS_HPP_
