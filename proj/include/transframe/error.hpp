#ifndef TRANSFRAME_ERROR_HPP
#define TRANSFRAME_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace transframe {

enum class ErrorCode {
  NonTransitive,
  DuplicatePoint,
  DanglingEdge,
  UnknownPoint,
  TooManyPoints,
  EmptyGenerator,
  NotRooted,
  InvalidIndex,
  OrderingMismatch,
  SyntaxError,
  BudgetExceeded,
  SkeletonNotTree,
  WeakWidthViolation,
  RejectionBudgetExceeded,
  InvalidTree,
  InvalidInput,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonTransitive: return "NonTransitive";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::UnknownPoint: return "UnknownPoint";
    case ErrorCode::TooManyPoints: return "TooManyPoints";
    case ErrorCode::EmptyGenerator: return "EmptyGenerator";
    case ErrorCode::NotRooted: return "NotRooted";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::OrderingMismatch: return "OrderingMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::SkeletonNotTree: return "SkeletonNotTree";
    case ErrorCode::WeakWidthViolation: return "WeakWidthViolation";
    case ErrorCode::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorCode::InvalidTree: return "InvalidTree";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Base class of every error raised by the library. The code is stable and
/// is what callers (and the CLI exit-code mapping) should switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A relation failed the transitivity check; carries one violating triple
/// (first, second, third) with first->second, second->third but not first->third.
class NonTransitiveError : public Error {
 public:
  NonTransitiveError(std::string a, std::string b, std::string c)
      : Error(ErrorCode::NonTransitive,
              "(" + a + "," + b + "," + c + ") lacks (" + a + "," + c + ")"),
        triple_{std::move(a), std::move(b), std::move(c)} {}

  struct Triple {
    std::string first, second, third;
  };
  const Triple& triple() const noexcept { return triple_; }

 private:
  Triple triple_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t column, const std::string& what)
      : Error(ErrorCode::SyntaxError, "column " + std::to_string(column) + ": " + what),
        column_(column) {}

  /// 1-based column of the offending token (length + 1 at end of input).
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(const std::string& what, std::uint64_t required, std::uint64_t budget)
      : Error(ErrorCode::BudgetExceeded,
              what + " needs " + std::to_string(required) + " > budget " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

}  // namespace transframe

#endif  // TRANSFRAME_ERROR_HPP
