#pragma once

#include <cstdint>

namespace mqshape::special {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Gamma function for real x away from the poles {0, -1, -2, ...}.
/// Lanczos approximation for x >= 0.5, reflection below. Throws DomainError at a pole.
double gamma(double x);

/// sin(pi * x) with exact argument reduction; returns exact zeros at integers.
double sin_pi(double x);

/// Modified Bessel function of the second kind, order zero, for x > 0.
/// Power series for x <= 2, Steed/Temme continued fraction above.
double bessel_k0(double x);

/// Exact binomial coefficient. Throws DomainError if b > a or on 64-bit overflow.
std::uint64_t binomial(unsigned a, unsigned b);

/// Exact a!; throws DomainError on 64-bit overflow.
std::uint64_t factorial(unsigned a);

}  // namespace mqshape::special
