#pragma once

#include <stdexcept>
#include <string>

namespace monodec {

// Error taxonomy shared across the library. The CLI maps codes to exit
// statuses: Inconsistent -> 2, VerificationFailed -> 1, budget/usage -> 3.
enum class ErrorCode {
  DivisionByZero,
  CtxMismatch,
  NotInvertible,
  BudgetExceeded,
  DimensionMismatch,
  Inconsistent,
  VerificationFailed,
  NotSupported,
  NotNatural,
  UsageError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::CtxMismatch: return "CtxMismatch";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::NotSupported: return "NotSupported";
    case ErrorCode::NotNatural: return "NotNatural";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace monodec
