#include "common/error.hpp"

namespace agilekb {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedTerm: return "MalformedTerm";
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::UnknownPrefix: return "UnknownPrefix";
    case ErrorCode::UnsafeRule: return "UnsafeRule";
    case ErrorCode::DuplicateRule: return "DuplicateRule";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::StaleOverlay: return "StaleOverlay";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::Cycle: return "CycleError";
    case ErrorCode::DuplicateConcern: return "DuplicateConcern";
    case ErrorCode::UnknownConcern: return "UnknownConcern";
    case ErrorCode::MissingParameter: return "MissingParameter";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Internal: return "InternalError";
  }
  return "InternalError";
}

namespace {

std::string positioned(const std::string& message, SourcePosition pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::vector<std::string> details)
    : std::runtime_error(message), code_(code), message_(message), details_(std::move(details)) {}

Error::Error(ErrorCode code, const std::string& message, SourcePosition position,
             std::vector<std::string> details)
    : std::runtime_error(positioned(message, position)),
      code_(code),
      message_(message),
      details_(std::move(details)),
      position_(position) {}

Error Error::with_context(const std::string& context) const {
  Error copy(code_, context + ":" + (position_ ? "" : " ") + what(), details_);
  copy.message_ = message_;
  copy.position_ = position_;
  return copy;
}

}  // namespace agilekb
