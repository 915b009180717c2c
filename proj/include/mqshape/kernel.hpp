#pragma once

#include <span>

namespace mqshape {

/// Order of conditional positive definiteness, max{0, ceil(beta/2)}.
/// Throws DomainError for beta in {0, 2, 4, ...}.
int cpd_order(double beta);

/// Generalized multiquadric h(x) = Gamma(-beta/2) (c^2 + |x|^2)^(beta/2).
///
/// beta > 0 gives the multiquadrics, beta < 0 the inverse multiquadrics. The
/// gamma prefactor flips the sign for 0 < beta < 2 so that h is conditionally
/// positive definite of order cpd_order(beta) without an extra (-1)^ceil(beta/2).
class Kernel {
 public:
  Kernel(double beta, double c);

  double beta() const noexcept { return beta_; }
  double c() const noexcept { return c_; }
  int order() const noexcept { return order_; }
  double gamma_factor() const noexcept { return gamma_factor_; }

  double operator()(std::span<const double> x) const;

  /// h as a function of |x|^2.
  double radial(double r_squared) const;

 private:
  double beta_;
  double c_;
  int order_;
  double gamma_factor_;
  double c_squared_;
  double half_beta_;
};

}  // namespace mqshape
