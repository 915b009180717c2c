#pragma once

#include <span>

namespace mqshape {

/// Tensor-product sinc f(x) = A prod_i sin(sigma0 x_i) / (pi x_i).
///
/// Its Fourier transform (f^(xi) = integral f(x) e^{-i<x,xi>} dx) is A times the
/// indicator of the cube [-sigma0, sigma0]^n, so f is band-limited to the
/// enclosing ball of radius sigma0 sqrt(n), and ||f||_2^2 = A^2 (sigma0/pi)^n.
class SincTestFunction {
 public:
  SincTestFunction(int n, double sigma0, double amplitude = 1.0);

  int dim() const noexcept { return n_; }
  double sigma0() const noexcept { return sigma0_; }
  double amplitude() const noexcept { return amplitude_; }

  /// sigma0 * sqrt(n).
  double band_radius() const;

  double l2_norm() const;

  double operator()(std::span<const double> x) const;

 private:
  int n_;
  double sigma0_;
  double amplitude_;
};

/// sin(w t) / (pi t), with the limit w/pi near t = 0.
double sinc_factor(double w, double t);

}  // namespace mqshape
