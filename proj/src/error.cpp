#include "troplog/error.hpp"

namespace troplog {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnstableRange: return "UnstableRange";
    case ErrorCode::NonZeroSum: return "NonZeroSum";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NoSuchEdge: return "NoSuchEdge";
    case ErrorCode::NoSuchLeg: return "NoSuchLeg";
    case ErrorCode::IncompleteFan: return "IncompleteFan";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
  }
  return "Unknown";
}

}  // namespace troplog
