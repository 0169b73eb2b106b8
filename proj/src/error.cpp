#include "anfkit/error.hpp"

namespace anfkit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BlowupExceeded: return "BlowupExceeded";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::NoCrucialTerms: return "NoCrucialTerms";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what, std::optional<std::size_t> position)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code),
      position_(position) {}

}  // namespace anfkit
