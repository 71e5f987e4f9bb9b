#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace microlift {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class ErrorCode {
  InvalidArgument = 1,
  GammaPole,
  BudgetExceeded,
  OverlappingSingularities,
  ExponentOutOfRange,
  RegularizationRequired,
  GridMismatch,
  Resolution,
  StencilEscapesDisk,
  Io,
  Parse,
  Internal = 99,
};

struct QuadValue {
  cplx value{0.0, 0.0};
  double err_estimate = 0.0;
  std::int64_t nodes_used = 1;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string module, const std::string& message)
      : std::runtime_error(module + ": " + message), code_(code), module_(std::move(module)) {}

  ErrorCode code() const { return code_; }
  const std::string& module() const { return module_; }

 private:
  ErrorCode code_;
  std::string module_;
};

// Thrown when a quadrature runs out of nodes; carries what it had.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string module, const std::string& message, QuadValue best)
      : Error(ErrorCode::BudgetExceeded, std::move(module), message), best_(best) {}
  const QuadValue& best() const { return best_; }

 private:
  QuadValue best_;
};

}  // namespace microlift
