#pragma once

#include <stdexcept>
#include <string>

namespace cdplab {

/// Base of every error raised by the library. `kind()` is a stable tag used by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define CDPLAB_DEFINE_ERROR(Name)                                             \
  class Name : public Error {                                                 \
   public:                                                                    \
    explicit Name(const std::string& what) : Error(#Name, what) {}            \
  };

CDPLAB_DEFINE_ERROR(InvalidInput)
CDPLAB_DEFINE_ERROR(NotHermitian)
CDPLAB_DEFINE_ERROR(NotCompletelyPositive)
CDPLAB_DEFINE_ERROR(NotTracePreserving)
CDPLAB_DEFINE_ERROR(NotTomographicallyComplete)
CDPLAB_DEFINE_ERROR(ParseError)
CDPLAB_DEFINE_ERROR(ValidationError)

#undef CDPLAB_DEFINE_ERROR

/// Raised when an iterative solver hits its iteration cap; carries the final residuals.
class SolverFailed : public Error {
 public:
  SolverFailed(const std::string& what, double primal_residual, double dual_residual, double gap)
      : Error("SolverFailed", what),
        primal_residual_(primal_residual),
        dual_residual_(dual_residual),
        gap_(gap) {}
  double primal_residual() const noexcept { return primal_residual_; }
  double dual_residual() const noexcept { return dual_residual_; }
  double gap() const noexcept { return gap_; }

 private:
  double primal_residual_;
  double dual_residual_;
  double gap_;
};

/// Raised when the purification/extension construction does not reproduce the state.
class ReconstructionFailed : public Error {
 public:
  ReconstructionFailed(const std::string& what, double residual)
      : Error("ReconstructionFailed", what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace cdplab
