#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperorlicz {

/// Machine-readable failure categories. The CLI reports these verbatim.
enum class ErrorCode {
  invalid_argument,
  non_finite,
  convexity_violation,
  unbounded_on_range,
  degenerate_function,
  method_inapplicable,
  boundary_overflow,
  invalid_table,
  not_central,
  no_aperiodic_element,
  not_found,
  witness_fails,
  parse_error,
  schema_violation,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::non_finite: return "non_finite";
    case ErrorCode::convexity_violation: return "convexity_violation";
    case ErrorCode::unbounded_on_range: return "unbounded_on_range";
    case ErrorCode::degenerate_function: return "degenerate_function";
    case ErrorCode::method_inapplicable: return "method_inapplicable";
    case ErrorCode::boundary_overflow: return "boundary_overflow";
    case ErrorCode::invalid_table: return "invalid_table";
    case ErrorCode::not_central: return "not_central";
    case ErrorCode::no_aperiodic_element: return "no_aperiodic_element";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::witness_fails: return "witness_fails";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::schema_violation: return "schema_violation";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// what() without the code prefix
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace hyperorlicz
