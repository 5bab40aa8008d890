#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace micsmp {

enum class ErrorCode {
  NotStochastic,
  NotStronglyConnected,
  TooLarge,
  NumericalFailure,
  LevelOutOfRange,
  InvalidArgument,
  NoConvergence,
  AtomOnAbsorbing,
  AbsorbingStart,
  DegenerateDenominator,
  OutOfRange,
  DegenerateCase,
  ZeroDenominator,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for codes caused by bad user input (CLI exit code 2), false for
/// runtime failures (exit code 1).
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace micsmp
