#include "micsmp/error.hpp"

namespace micsmp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotStochastic: return "NotStochastic";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::AtomOnAbsorbing: return "AtomOnAbsorbing";
    case ErrorCode::AbsorbingStart: return "AbsorbingStart";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DegenerateCase: return "DegenerateCase";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NumericalFailure:
    case ErrorCode::NoConvergence:
    case ErrorCode::IoError:
      return false;
    default:
      return true;
  }
}

}  // namespace micsmp
