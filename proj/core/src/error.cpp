#include "gapforge/error.hpp"

namespace gapforge {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTableTooShort: return "TableTooShort";
    case ErrorCode::kUnknownDelta: return "UnknownDelta";
    case ErrorCode::kUnknownIndex: return "UnknownIndex";
    case ErrorCode::kIndexMismatch: return "IndexMismatch";
    case ErrorCode::kHeightMismatch: return "HeightMismatch";
    case ErrorCode::kAgreementFailure: return "AgreementFailure";
    case ErrorCode::kHypothesisFailure: return "HypothesisFailure";
    case ErrorCode::kSearchTooLarge: return "SearchTooLarge";
    case ErrorCode::kInvalidBit: return "InvalidBit";
    case ErrorCode::kInvalidCondition: return "InvalidCondition";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotAChain: return "NotAChain";
    case ErrorCode::kRequirementFailure: return "RequirementFailure";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace gapforge
