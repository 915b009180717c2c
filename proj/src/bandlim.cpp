#include "mqshape/bandlim.hpp"

#include <cmath>

#include <fmt/format.h>

#include "mqshape/errors.hpp"
#include "mqshape/special.hpp"

namespace mqshape {

using special::kPi;

double sinc_factor(double w, double t) {
  const double z = w * t;
  if (std::abs(z) < 1e-4) {
    return w / kPi * (1.0 - z * z / 6.0);
  }
  return std::sin(z) / (kPi * t);
}

SincTestFunction::SincTestFunction(int n, double sigma0, double amplitude)
    : n_(n), sigma0_(sigma0), amplitude_(amplitude) {
  if (n < 1) {
    throw DomainError(fmt::format("SincTestFunction: n must be positive, got {}", n));
  }
  if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) {
    throw DomainError(fmt::format("SincTestFunction: sigma0 must be positive, got {}", sigma0));
  }
  if (!std::isfinite(amplitude)) {
    throw DomainError("SincTestFunction: amplitude must be finite");
  }
}

double SincTestFunction::band_radius() const { return sigma0_ * std::sqrt(static_cast<double>(n_)); }

double SincTestFunction::l2_norm() const {
  return std::abs(amplitude_) * std::pow(sigma0_ / kPi, 0.5 * n_);
}

double SincTestFunction::operator()(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(n_)) {
    throw DomainError("SincTestFunction: point dimension mismatch");
  }
  double value = amplitude_;
  for (double xi : x) {
    value *= sinc_factor(sigma0_, xi);
  }
  return value;
}

}  // namespace mqshape
