#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadchase {

/// Error categories shared by the C++ core and the C API.
enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kInvalidContext,
  kIo,
  kBudgetRequired,
  kNotContextAcyclic,
  kLimitExceeded,
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax error with a 1-based source position. `line == 0` means the
/// position is unknown (e.g. a semantic check over a whole document).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorCode::kParse, format(line, column, message)),
        line_(line),
        column_(column),
        detail_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  static std::string format(std::size_t line, std::size_t column, const std::string& message) {
    if (line == 0) return message;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

/// Raised by analyses that require a context-acyclic system; carries the
/// offending cycle (first and last element coincide).
class NotContextAcyclicError : public Error {
 public:
  NotContextAcyclicError(ErrorCode code, const std::string& message, std::vector<std::string> cycle)
      : Error(code, message), cycle_(std::move(cycle)) {}

  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

}  // namespace quadchase
