#include "ellpot/error.hpp"

namespace ellpot {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveAxis: return "NonPositiveAxis";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionNotThree: return "DimensionNotThree";
    case ErrorCode::NegativeParameter: return "NegativeParameter";
    case ErrorCode::NotExterior: return "NotExterior";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidBound: return "InvalidBound";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ScaleNotGreaterThanOne: return "ScaleNotGreaterThanOne";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::DegenerateAxes: return "DegenerateAxes";
    case ErrorCode::NotProlate: return "NotProlate";
    case ErrorCode::NotOblate: return "NotOblate";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace ellpot
