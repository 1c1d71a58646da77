#ifndef WREATHLAB_ERROR_HPP_
#define WREATHLAB_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wreathlab {

  // Malformed or unusable input. Maps to CLI exit code 2.
  class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class ParseError : public InputError {
   public:
    ParseError(std::string const& msg, std::size_t line, std::size_t column)
        : InputError("line " + std::to_string(line) + ", column "
                     + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept {
      return line_;
    }
    std::size_t column() const noexcept {
      return column_;
    }

   private:
    std::size_t line_;
    std::size_t column_;
  };

  // A table or term refers to something that was never declared.
  class StructuralError : public InputError {
   public:
    using InputError::InputError;
  };

  // Operands that do not fit together (variant, arity, index range).
  class UsageError : public InputError {
   public:
    using InputError::InputError;
  };

  // The operation is defined, but its mathematical precondition fails.
  class PreconditionError : public InputError {
   public:
    using InputError::InputError;
  };

  class UnsupportedError : public InputError {
   public:
    using InputError::InputError;
  };

  // An enumeration would exceed the configured cardinality budget.
  class BudgetExceeded : public InputError {
   public:
    BudgetExceeded(std::string const& msg, double estimate)
        : InputError(msg), estimate_(estimate) {}
    double estimate() const noexcept {
      return estimate_;
    }

   private:
    double estimate_;
  };

  // A search whose success is guaranteed ran out of room. Exit code 3.
  class BoundExhausted : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // An internal invariant check failed; this means a bug upstream. Exit code 3.
  class InternalConsistencyError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

}  // namespace wreathlab

#endif  // WREATHLAB_ERROR_HPP_
