#include "eslr/errors.hpp"

namespace eslr {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonFiniteInput: return "NonFiniteInput";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::CholeskyFailure: return "CholeskyFailure";
    case ErrorKind::ShrinkExhausted: return "ShrinkExhausted";
    case ErrorKind::EvaluationError: return "EvaluationError";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::DegenerateSeries: return "DegenerateSeries";
    case ErrorKind::ZeroTruth: return "ZeroTruth";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::BadShape: return "BadShape";
    case ErrorKind::ZeroSignal: return "ZeroSignal";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void raise(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace eslr
