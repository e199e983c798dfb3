#pragma once

#include <stdexcept>
#include <string>

namespace formsieve {

// Bad input at an API or CLI boundary. The CLI maps this to exit status 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation would leave the documented 64-bit (or 128-bit) bounds.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// The estimated inner-operation count exceeds the configured budget.
// The CLI maps this to exit status 3.
class WorkLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A lattice family does not satisfy the hypotheses it was declared with.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pollard rho ran out of its iteration budget.
class FactorTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace formsieve
