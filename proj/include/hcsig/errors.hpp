#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hcsig {

enum class ErrorCode {
  // quantum_core
  NonNormalizedState,
  NonUnitBloch,
  DuplicateParty,
  // correlation_algebra
  ComponentOutOfRange,
  NotNormalized,
  EmptySubset,
  // feasibility
  TooManyFreeComponents,
  FixedValueOutOfRange,
  ComponentNotFree,
  ZeroQMValue,
  NonMonotonePredicate,
  // causal_timing
  SuperluminalFrame,
  // witness_engine
  AfterAfterPresent,
  UnsupportedTimingPattern,
  EmptyIntervalEncountered,
  // input handling
  InvalidArgument,
  ParseError,
  ValidationError,
  UnknownDemo,
  // a computed quantity broke an invariant that should hold by construction
  InternalConsistency,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hcsig
