#include "searchenv/error.hpp"

namespace searchenv {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidQuestion: return "invalid_question";
    case ErrorCode::IllegalAction: return "illegal_action";
    case ErrorCode::SessionClosed: return "session_closed";
    case ErrorCode::NothingToUndo: return "nothing_to_undo";
    case ErrorCode::InvalidQuery: return "invalid_query";
    case ErrorCode::BackendUnavailable: return "backend_unavailable";
    case ErrorCode::UnsupportedContent: return "unsupported_content";
    case ErrorCode::ValidationFailed: return "validation_failed";
    case ErrorCode::EmptyDataset: return "empty_dataset";
    case ErrorCode::InvalidSplit: return "invalid_split";
    case ErrorCode::UnparseableAction: return "unparseable_action";
    case ErrorCode::InvalidSpan: return "invalid_span";
    case ErrorCode::SpanNotFound: return "span_not_found";
    case ErrorCode::InsufficientPool: return "insufficient_pool";
    case ErrorCode::InvalidInput: return "invalid_input";
    case ErrorCode::Undefined: return "undefined";
    case ErrorCode::NotFound: return "not_found";
  }
  return "unknown";
}

}  // namespace searchenv
