#pragma once

#include <stdexcept>
#include <string>

namespace ellpot {

enum class ErrorCode {
  NonPositiveAxis,
  DimensionTooSmall,
  DimensionMismatch,
  DimensionNotThree,
  NegativeParameter,
  NotExterior,
  NotInterior,
  NoConvergence,
  InvalidBound,
  InvalidConfig,
  ScaleNotGreaterThanOne,
  ParameterOutOfRange,
  DegenerateAxes,
  NotProlate,
  NotOblate,
  TooFewSamples,
  MalformedLine,
  Io,
  Usage,
};

const char* to_string(ErrorCode code) noexcept;

/// Domain error raised by every module. Unconverged quadrature is not an
/// error; it is reported through IntegralResult::converged.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ellpot
