#pragma once

#include <stdexcept>
#include <string>

namespace fordsph {

// Precondition on a mathematical argument violated (zero divisor, q = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Exact integer arithmetic would overflow its 64-bit representation.
class ArithmeticError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Malformed user input: unparsable literals, incomplete tables.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A requested size exceeds a method's configured cap.
class CapExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace fordsph
