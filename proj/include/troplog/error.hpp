#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace troplog {

enum class ErrorCode {
  InvalidInput,
  ParseError,
  UnstableRange,
  NonZeroSum,
  LengthMismatch,
  NoSuchEdge,
  NoSuchLeg,
  IncompleteFan,
  UnsupportedDimension,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this exception; `code()` is stable for
// scripting and maps onto CLI exit codes.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace troplog
