#pragma once

#include <stdexcept>
#include <string>

namespace cskern {

enum class ErrorCode {
  DomainError,
  ParameterOutOfRange,
  ConvergenceFailure,
  QuadratureNonconvergence,
  DecayTooSlow,
  DimensionMismatch,
  SingularGram,
  PositivityViolation,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure in the library surfaces as a KernelError carrying a code the
/// CLI maps onto its exit status.
class KernelError : public std::runtime_error {
 public:
  KernelError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DomainError: return "DOMAIN_ERROR";
    case ErrorCode::ParameterOutOfRange: return "PARAMETER_OUT_OF_RANGE";
    case ErrorCode::ConvergenceFailure: return "CONVERGENCE_FAILURE";
    case ErrorCode::QuadratureNonconvergence: return "QUADRATURE_NONCONVERGENCE";
    case ErrorCode::DecayTooSlow: return "DECAY_TOO_SLOW";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::SingularGram: return "SINGULAR_GRAM";
    case ErrorCode::PositivityViolation: return "POSITIVITY_VIOLATION";
    case ErrorCode::IoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace cskern
