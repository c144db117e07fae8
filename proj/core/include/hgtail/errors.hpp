#pragma once

#include <stdexcept>
#include <string>

namespace hgtail {

// Argument outside the mathematical domain of a function (x <= 0 for
// ln_gamma, probabilities outside [0,1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid distribution parameters.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bound was asked for outside the regime in which it holds.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative evaluation exhausted its iteration budget. This indicates a
// numerics defect rather than bad input.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// None of the requested bound methods applies to any representation.
class NoApplicableMethodError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hgtail
