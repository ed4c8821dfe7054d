#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eslr {

enum class ErrorKind {
  InvalidArgument,
  NonFiniteInput,
  SingularGram,
  CholeskyFailure,
  ShrinkExhausted,
  EvaluationError,
  ConfigError,
  DegenerateSeries,
  ZeroTruth,
  GridTooCoarse,
  BadShape,
  ZeroSignal,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it onto an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace eslr
