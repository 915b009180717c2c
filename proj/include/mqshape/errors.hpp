#pragma once

#include <stdexcept>
#include <string>

namespace mqshape {

/// Invalid argument or violated precondition (bad β, c ≤ 0, δ outside its interval, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The node set cannot determine the polynomial block of the interpolation system.
class UnisolvencyError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// (n, β) combination for which no native-norm estimate is available.
class UnsupportedCaseError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The interpolation system is numerically singular for the requested shape parameter.
class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, double shape_c, double pivot_ratio)
      : std::runtime_error(what), shape_c_(shape_c), pivot_ratio_(pivot_ratio) {}

  double shape_c() const noexcept { return shape_c_; }
  double pivot_ratio() const noexcept { return pivot_ratio_; }

 private:
  double shape_c_;
  double pivot_ratio_;
};

}  // namespace mqshape
