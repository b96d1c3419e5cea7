#pragma once

#include <stdexcept>
#include <string>

namespace gbs {

/// Stable error identifiers. The CLI maps these onto exit codes and JSON.
enum class ErrorCode {
  ParseError,
  ValidationError,
  SingularMatrix,
  MalformedWord,
  ResourceLimit,
  PrecisionExhausted,
  NotApplicable,
  DomainError,
  RadiusTooSmall,
  UnknownBuiltin,
  BadParams,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " +
                                         std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace gbs
