#pragma once

#include <stdexcept>
#include <string>

namespace numeros {

// Stable machine-readable error codes, surfaced verbatim by the CLI.
enum class ErrorCode {
  MalformedAtom,
  ArityMismatch,
  UnsupportedExpression,
  InconsistentCommitment,
  BudgetExceeded,
  NotDominated,
  NotLess,
  CapacityExceeded,
  SyntaxError,
  UndefinedName,
};

inline const char* errorCodeName(ErrorCode c) {
  switch (c) {
    case ErrorCode::MalformedAtom: return "MalformedAtom";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnsupportedExpression: return "UnsupportedExpression";
    case ErrorCode::InconsistentCommitment: return "InconsistentCommitment";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotDominated: return "NotDominated";
    case ErrorCode::NotLess: return "NotLess";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UndefinedName: return "UndefinedName";
  }
  return "Unknown";
}

class EngineError : public std::runtime_error {
 public:
  EngineError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(errorCodeName(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public EngineError {
 public:
  SyntaxError(int line, int column, const std::string& what)
      : EngineError(ErrorCode::SyntaxError,
                    "line " + std::to_string(line) + ", col " +
                        std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace numeros
