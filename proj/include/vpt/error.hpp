#pragma once

#include <stdexcept>
#include <string>

namespace vpt {

/// Base class for all numerical failures reported by the library.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested size exceeds what an implementation supports.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Argument outside the region where an operation is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative method ran out of iterations or could not meet its tolerance.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, std::string diagnostics)
      : NumericalError(what), diagnostics_(std::move(diagnostics)) {}

  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

}  // namespace vpt
