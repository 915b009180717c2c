#include "mqshape/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <fmt/format.h>

#include "mqshape/errors.hpp"

namespace mqshape::special {

namespace {

// Lanczos coefficients for g = 7, 9 terms.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos_gamma(double x) {
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += kLanczos[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  // Split the power so that t^(z+1/2) does not overflow before exp(-t) is applied.
  const double half_power = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * kPi) * half_power * (half_power * std::exp(-t)) * series;
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Steed's continued fraction (Temme) for K_0; accurate for x >= 2.
double k0_continued_fraction(double x) {
  constexpr int kMaxIter = 10000;
  constexpr double a1 = 0.25;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= kMaxIter; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < std::numeric_limits<double>::epsilon()) {
      break;
    }
  }
  return std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
}

// K_0(x) = -(ln(x/2) + gamma_E) I_0(x) + sum_k (x^2/4)^k / (k!)^2 H_k
double k0_series(double x) {
  const double y = 0.25 * x * x;
  double term = 1.0;
  double i0 = 1.0;
  double harmonic = 0.0;
  double tail = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= y / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    i0 += term;
    tail += term * harmonic;
    if (term * harmonic < 1e-17 * tail) {
      break;
    }
  }
  return -(std::log(0.5 * x) + kEulerGamma) * i0 + tail;
}

}  // namespace

double sin_pi(double x) {
  if (x == std::floor(x)) {
    return std::copysign(0.0, x);
  }
  double r = std::fmod(x, 2.0);
  if (r > 1.0) {
    r -= 2.0;
  } else if (r < -1.0) {
    r += 2.0;
  }
  if (r > 0.5) {
    r = 1.0 - r;
  } else if (r < -0.5) {
    r = -1.0 - r;
  }
  return std::sin(kPi * r);
}

double gamma(double x) {
  if (std::isnan(x)) {
    throw DomainError("gamma: argument is NaN");
  }
  if (is_nonpositive_integer(x)) {
    throw DomainError(fmt::format("gamma: pole at x = {}", x));
  }
  if (x >= 1.0 && x <= 20.0 && x == std::floor(x)) {
    return static_cast<double>(factorial(static_cast<unsigned>(x) - 1));
  }
  if (x < 0.5) {
    return kPi / (sin_pi(x) * lanczos_gamma(1.0 - x));
  }
  return lanczos_gamma(x);
}

double bessel_k0(double x) {
  if (!(x > 0.0)) {
    throw DomainError(fmt::format("bessel_k0: requires x > 0, got {}", x));
  }
  if (std::isinf(x)) {
    return 0.0;
  }
  return x <= 2.0 ? k0_series(x) : k0_continued_fraction(x);
}

std::uint64_t binomial(unsigned a, unsigned b) {
  if (b > a) {
    throw DomainError(fmt::format("binomial: b = {} exceeds a = {}", b, a));
  }
  b = std::min(b, a - b);
  std::uint64_t result = 1;
  for (unsigned i = 0; i < b; ++i) {
    // result * (a - i) is divisible by (i + 1) at every step.
    std::uint64_t next = 0;
    if (__builtin_mul_overflow(result, static_cast<std::uint64_t>(a - i), &next)) {
      throw DomainError(fmt::format("binomial({}, {}) overflows 64 bits", a, b));
    }
    result = next / (i + 1);
  }
  return result;
}

std::uint64_t factorial(unsigned a) {
  std::uint64_t result = 1;
  for (unsigned i = 2; i <= a; ++i) {
    if (__builtin_mul_overflow(result, static_cast<std::uint64_t>(i), &result)) {
      throw DomainError(fmt::format("factorial({}) overflows 64 bits", a));
    }
  }
  return result;
}

}  // namespace mqshape::special
