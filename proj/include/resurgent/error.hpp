#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace resurgent {

// Error taxonomy shared by the exact layer, the numeric lab and the CLI.
enum class ErrorKind {
  IndexDimensionMismatch,
  TermExceedsCaps,
  KindMismatch,
  DimensionMismatch,
  UnknownVariable,
  IndexOutOfCaps,
  CapsExhausted,
  InsufficientData,
  NonconvergentTail,
  BudgetExceeded,
  SingularSystem,
  InvalidArgument,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind k) noexcept {
  switch (k) {
    case ErrorKind::IndexDimensionMismatch: return "IndexDimensionMismatch";
    case ErrorKind::TermExceedsCaps: return "TermExceedsCaps";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::IndexOutOfCaps: return "IndexOutOfCaps";
    case ErrorKind::CapsExhausted: return "CapsExhausted";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::NonconvergentTail: return "NonconvergentTail";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return to_string(kind_); }

  // Numeric failures (quadrature, linear algebra) as opposed to contract violations.
  bool is_numeric() const noexcept {
    return kind_ == ErrorKind::NonconvergentTail || kind_ == ErrorKind::BudgetExceeded ||
           kind_ == ErrorKind::SingularSystem;
  }

 private:
  ErrorKind kind_;
};

// Rank-deficient Padé block; `deficiency` is M minus the numerical rank.
class SingularSystemError : public Error {
 public:
  SingularSystemError(int deficiency, const std::string& what)
      : Error(ErrorKind::SingularSystem, what), deficiency_(deficiency) {}
  int deficiency() const noexcept { return deficiency_; }

 private:
  int deficiency_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace resurgent
