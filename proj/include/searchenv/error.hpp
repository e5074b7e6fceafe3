#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace searchenv {

enum class ErrorCode {
  InvalidQuestion,
  IllegalAction,
  SessionClosed,
  NothingToUndo,
  InvalidQuery,
  BackendUnavailable,
  UnsupportedContent,
  ValidationFailed,
  EmptyDataset,
  InvalidSplit,
  UnparseableAction,
  InvalidSpan,
  SpanNotFound,
  InsufficientPool,
  InvalidInput,
  Undefined,
  NotFound,
};

/// Stable snake_case name used on the wire ("illegal_action", ...).
std::string_view error_code_name(ErrorCode code);

/// All recoverable failures in the library surface as this exception.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace searchenv
