#include "hcsig/errors.hpp"

namespace hcsig {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonNormalizedState: return "NonNormalizedState";
    case ErrorCode::NonUnitBloch: return "NonUnitBloch";
    case ErrorCode::DuplicateParty: return "DuplicateParty";
    case ErrorCode::ComponentOutOfRange: return "ComponentOutOfRange";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::TooManyFreeComponents: return "TooManyFreeComponents";
    case ErrorCode::FixedValueOutOfRange: return "FixedValueOutOfRange";
    case ErrorCode::ComponentNotFree: return "ComponentNotFree";
    case ErrorCode::ZeroQMValue: return "ZeroQMValue";
    case ErrorCode::NonMonotonePredicate: return "NonMonotonePredicate";
    case ErrorCode::SuperluminalFrame: return "SuperluminalFrame";
    case ErrorCode::AfterAfterPresent: return "AfterAfterPresent";
    case ErrorCode::UnsupportedTimingPattern: return "UnsupportedTimingPattern";
    case ErrorCode::EmptyIntervalEncountered: return "EmptyIntervalEncountered";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownDemo: return "UnknownDemo";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

}  // namespace hcsig
