#pragma once

#include <stdexcept>
#include <string>

namespace vecflow {

/// Thrown when an operation's input violates its documented precondition.
/// `kind()` is a short machine-readable tag used by the CLI diagnostics.
class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(std::string kind, const std::string& message)
      : std::invalid_argument(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// A search ran out of its time budget before it could decide.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check that a theorem guarantees has failed.
/// This never happens on valid inputs; if it does, something is deeply wrong.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace vecflow
