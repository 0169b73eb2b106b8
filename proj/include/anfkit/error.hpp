#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace anfkit {

enum class ErrorCode {
  SingularMatrix,
  DimensionMismatch,
  SyntaxError,
  IndexOutOfRange,
  TooLarge,
  BlowupExceeded,
  DegreeTooHigh,
  NoCrucialTerms,
  Inconsistent,
  InvalidConfig,
  VerificationFailed,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; `code()` distinguishes the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> position = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  // Character offset into the parsed text, for SyntaxError and IndexOutOfRange.
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

}  // namespace anfkit
