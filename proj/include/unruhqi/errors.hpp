#pragma once

#include <stdexcept>
#include <string>

namespace unruhqi {

/// Parameter outside its mathematical domain (non-finite, negative, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Fock series could not be truncated within the requested tail mass.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double achievable_tail)
      : std::runtime_error(what), achievable_tail_(achievable_tail) {}

  double achievable_tail() const noexcept { return achievable_tail_; }

 private:
  double achievable_tail_;
};

/// Unknown, duplicated or mismatched subsystem labels/dimensions.
class LayoutError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operator fails a structural check (Hermiticity, trace, positivity, shape).
class OperatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace unruhqi
