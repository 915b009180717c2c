#include "mqshape/kernel.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mqshape/errors.hpp"
#include "mqshape/special.hpp"

namespace mqshape {

int cpd_order(double beta) {
  if (!std::isfinite(beta)) {
    throw DomainError("cpd_order: beta must be finite");
  }
  if (beta >= 0.0 && beta == std::floor(beta) && std::fmod(beta, 2.0) == 0.0) {
    throw DomainError(fmt::format("beta = {} is an even nonnegative integer; the kernel is undefined there", beta));
  }
  return std::max(0, static_cast<int>(std::ceil(beta / 2.0)));
}

Kernel::Kernel(double beta, double c)
    : beta_(beta),
      c_(c),
      order_(cpd_order(beta)),
      gamma_factor_(special::gamma(-beta / 2.0)),
      c_squared_(c * c),
      half_beta_(beta / 2.0) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw DomainError(fmt::format("shape parameter c must be positive and finite, got {}", c));
  }
}

double Kernel::radial(double r_squared) const {
  return gamma_factor_ * std::pow(c_squared_ + r_squared, half_beta_);
}

double Kernel::operator()(std::span<const double> x) const {
  double r2 = 0.0;
  for (double xi : x) {
    r2 += xi * xi;
  }
  return radial(r2);
}

}  // namespace mqshape
