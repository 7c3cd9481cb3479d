#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace agilekb {

enum class ErrorCode {
  MalformedTerm,
  Syntax,
  UnknownPrefix,
  UnsafeRule,
  DuplicateRule,
  UnboundVariable,
  StaleOverlay,
  ResourceLimit,
  NotFound,
  SchemaViolation,
  Cycle,
  DuplicateConcern,
  UnknownConcern,
  MissingParameter,
  InvalidParameter,
  InvalidProfile,
  Io,
  Internal,
};

const char* to_string(ErrorCode code) noexcept;

struct SourcePosition {
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based
};

// Single exception type for the core library. The code is what callers branch
// on; what() is a one-line human message, details carry per-item diagnostics
// (one schema violation, one unknown profile entry, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<std::string> details = {});
  Error(ErrorCode code, const std::string& message, SourcePosition position,
        std::vector<std::string> details = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& details() const noexcept { return details_; }
  const std::optional<SourcePosition>& position() const noexcept { return position_; }

  // Message without the position prefix.
  const std::string& message() const noexcept { return message_; }

  // Same error with `context` (usually a file name) prepended to the message.
  Error with_context(const std::string& context) const;

 private:
  ErrorCode code_;
  std::string message_;
  std::vector<std::string> details_;
  std::optional<SourcePosition> position_;
};

}  // namespace agilekb
