#include "mqshape/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "mqshape/errors.hpp"
#include "mqshape/kernel.hpp"
#include "mqshape/special.hpp"

namespace mqshape {

namespace {

using special::kPi;

// Checked rational arithmetic; an empty optional means 64-bit overflow.
std::optional<Rational> make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) return std::nullopt;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

std::optional<Rational> multiply(const std::optional<Rational>& x, const std::optional<Rational>& y) {
  if (!x || !y) return std::nullopt;
  // Cross-cancel first so that the products stay as small as possible.
  const std::int64_t gx = std::max<std::int64_t>(1, std::gcd(x->num, y->den));
  const std::int64_t gy = std::max<std::int64_t>(1, std::gcd(y->num, x->den));
  std::int64_t num = 0;
  std::int64_t den = 0;
  if (__builtin_mul_overflow(x->num / gx, y->num / gy, &num) ||
      __builtin_mul_overflow(x->den / gy, y->den / gx, &den)) {
    return std::nullopt;
  }
  return make_rational(num, den);
}

std::optional<Rational> reciprocal(const std::optional<Rational>& x) {
  if (!x || x->num == 0) return std::nullopt;
  return make_rational(x->den, x->num);
}

std::optional<Rational> power(const std::optional<Rational>& x, int e) {
  std::optional<Rational> out = Rational{1, 1};
  for (int i = 0; i < e; ++i) out = multiply(out, x);
  return out;
}

// Product of the integers lo, lo+1, ..., hi; empty product is 1.
std::optional<Rational> integer_product(long lo, long hi) {
  std::optional<Rational> out = Rational{1, 1};
  for (long k = lo; k <= hi; ++k) out = multiply(out, Rational{k, 1});
  return out;
}

double product_double(long lo, long hi) {
  double out = 1.0;
  for (long k = lo; k <= hi; ++k) out *= static_cast<double>(k);
  return out;
}

double log_add_exp(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(fmt::format("{} must be positive and finite, got {}", name, value));
  }
}

void require_norm(double l2_norm) {
  if (!(l2_norm >= 0.0) || !std::isfinite(l2_norm)) {
    throw DomainError(fmt::format("L2 norm must be nonnegative and finite, got {}", l2_norm));
  }
}

double log_m_factorial(int m) {
  double out = 0.0;
  for (int k = 2; k <= m; ++k) out += std::log(static_cast<double>(k));
  return out;
}

}  // namespace

std::string_view branch_tag(ConstantsBranch branch) {
  switch (branch) {
    case ConstantsBranch::kBelowNegative: return "a-i";
    case ConstantsBranch::kBelowPositive: return "a-ii";
    case ConstantsBranch::kMiddle: return "b";
    case ConstantsBranch::kAbove: return "c";
  }
  return "?";
}

RhoDelta0 rho_delta0(int n, double beta) {
  if (n < 1) {
    throw DomainError(fmt::format("dimension n must be positive, got {}", n));
  }
  const int order = cpd_order(beta);
  const double nd = static_cast<double>(n);
  RhoDelta0 out;
  out.m = order;

  if (beta < nd - 3.0) {
    const int s = static_cast<int>(std::ceil((nd - beta - 3.0) / 2.0));
    out.s = s;
    if (beta < 0.0) {
      out.branch = ConstantsBranch::kBelowNegative;
      out.rho_exact = make_rational(3 + s, 3);
      out.delta0_exact = multiply(integer_product(3, 2 + s), reciprocal(power(out.rho_exact, 2)));
      out.rho = (3.0 + s) / 3.0;
      out.delta0 = product_double(3, 2 + s) / (out.rho * out.rho);
    } else {
      const int m = static_cast<int>(std::ceil(beta / 2.0));
      out.m = m;
      out.branch = ConstantsBranch::kBelowPositive;
      out.rho_exact = make_rational(2 * m + 3 + s, 2 * m + 3);
      out.delta0_exact = multiply(integer_product(2 * m + 3, 2 * m + 2 + s),
                                  reciprocal(power(out.rho_exact, 2 * m + 2)));
      out.rho = 1.0 + static_cast<double>(s) / (2.0 * m + 3.0);
      out.delta0 = product_double(2 * m + 3, 2 * m + 2 + s) / std::pow(out.rho, 2 * m + 2);
    }
  } else if (beta < nd - 1.0) {
    out.branch = ConstantsBranch::kMiddle;
    out.rho_exact = Rational{1, 1};
    out.delta0_exact = Rational{1, 1};
  } else {
    const int s = -static_cast<int>(std::ceil((nd - beta - 3.0) / 2.0));
    const int m = static_cast<int>(std::ceil(beta / 2.0));
    out.s = s;
    out.m = m;
    out.branch = ConstantsBranch::kAbove;
    out.rho_exact = Rational{1, 1};
    out.delta0_exact = reciprocal(integer_product(2 * m - s + 3, 2 * m + 2));
    out.delta0 = 1.0 / product_double(2 * m - s + 3, 2 * m + 2);
  }
  // Prefer the correctly rounded value of the exact fraction when it is available.
  if (out.rho_exact) out.rho = out.rho_exact->value();
  if (out.delta0_exact) out.delta0 = out.delta0_exact->value();
  return out;
}

BoundConstants derived_constants(int n, double beta, double b0) {
  require_positive(b0, "b0");
  BoundConstants k;
  k.n = n;
  k.beta = beta;
  k.def = rho_delta0(n, beta);
  k.b0 = b0;
  k.C = std::max(2.0 / (3.0 * b0), 8.0 * k.def.rho);
  k.delta_max = 1.0 / (3.0 * k.C);
  k.lambda_prime = std::pow(2.0 / 3.0, 1.0 / (3.0 * k.C));
  return k;
}

unsigned admissible_l(const BoundConstants& constants, double delta) {
  if (!(delta > 0.0 && delta < constants.delta_max)) {
    throw DomainError(fmt::format("delta = {} outside the admissible interval (0, {}) = (0, 1/(3C)), C = {}",
                                  delta, constants.delta_max, constants.C));
  }
  const double lower = 1.0 / (3.0 * constants.C * delta);
  const double upper = 2.0 * lower;
  const double nearest = std::round(lower);
  // Snap values that are integers up to rounding in C * delta.
  double l = std::abs(lower - nearest) <= 1e-9 * lower ? nearest : std::ceil(lower);
  if (l > upper) {
    l = std::floor(upper);
  }
  if (l > 4294967295.0) {
    throw DomainError(fmt::format("delta = {} requires a lattice degree beyond range", delta));
  }
  return static_cast<unsigned>(l);
}

ScheduleItem make_schedule(const BoundConstants& constants, double delta) {
  return {delta, admissible_l(constants, delta), 2.0 / (3.0 * constants.C)};
}

NormEstimate norm_estimate_for(int n, double beta) {
  cpd_order(beta);
  if (beta > 0.0) {
    return NormEstimate::kPositiveBeta;
  }
  if (beta == -1.0 && n == 1) {
    return NormEstimate::kBessel;
  }
  const double sum = static_cast<double>(n) + beta;
  if (sum >= 1.0 || sum == -1.0) {
    return NormEstimate::kNegativeBeta;
  }
  throw UnsupportedCaseError(fmt::format(
      "no native-norm estimate for n = {}, beta = {}: negative beta needs n + beta >= 1, "
      "n + beta = -1, or (n, beta) = (1, -1)",
      n, beta));
}

double unit_ball_volume(int n) {
  if (n < 1) {
    throw DomainError("unit_ball_volume: n must be positive");
  }
  return std::pow(kPi, n / 2.0) / special::gamma(n / 2.0 + 1.0);
}

double native_norm_bound(int n, double beta, double c, double sigma, double l2_norm, double s_mn) {
  const NormEstimate which = norm_estimate_for(n, beta);
  require_positive(c, "c");
  require_positive(sigma, "sigma");
  require_positive(s_mn, "S(m,n)");
  require_norm(l2_norm);
  if (l2_norm == 0.0) {
    return 0.0;
  }
  const double nd = static_cast<double>(n);
  double log_rest = 0.0;
  switch (which) {
    case NormEstimate::kPositiveBeta:
      log_rest = 0.5 * (log_m_factorial(cpd_order(beta)) + std::log(s_mn));
      [[fallthrough]];
    case NormEstimate::kNegativeBeta:
      log_rest += (-nd - (1.0 + beta) / 4.0) * std::log(2.0) + (-nd - 0.25) * std::log(kPi) +
                  (1.0 + beta + nd) / 4.0 * std::log(sigma) + c * sigma / 2.0 +
                  (1.0 - beta - nd) / 4.0 * std::log(c);
      break;
    case NormEstimate::kBessel: {
      // Both |f^|^2 integrals in the bracket are bounded by ||f||^2.
      double log_bracket = -std::log(special::bessel_k0(1.0));
      if (1.0 / c < sigma) {
        const double log_b = std::log(2.0 * std::sqrt(3.0)) + 0.5 * std::log(c * sigma) + c * sigma;
        log_bracket = log_add_exp(log_bracket, log_b);
      }
      log_rest = -nd * std::log(2.0 * kPi) - 0.25 * std::log(2.0) + 0.5 * log_bracket;
      break;
    }
  }
  return l2_norm * std::exp(log_rest);
}

double error_bound_rhs(const BoundConstants& k, double c, double sigma, double delta, unsigned l,
                       double l2_norm, double s_mn) {
  const NormEstimate which = norm_estimate_for(k.n, k.beta);
  require_positive(c, "c");
  require_positive(sigma, "sigma");
  require_positive(s_mn, "S(m,n)");
  require_norm(l2_norm);
  if (!(delta > 0.0 && delta < k.delta_max)) {
    throw DomainError(fmt::format("delta = {} outside (0, {})", delta, k.delta_max));
  }
  if (l2_norm == 0.0) {
    return 0.0;
  }
  const double nd = static_cast<double>(k.n);
  const double beta = k.beta;
  const double ld = static_cast<double>(l);

  const double log_common = 0.5 * std::log(nd * unit_ball_volume(k.n)) + 0.5 * std::log(k.def.delta0) +
                            0.5 * std::log(3.0 * k.C) + 0.5 * std::log(delta) +
                            std::log(k.lambda_prime) / delta;
  double log_rest = 0.0;
  switch (which) {
    case NormEstimate::kPositiveBeta:
      log_rest = 0.5 * (log_m_factorial(cpd_order(beta)) + std::log(s_mn));
      [[fallthrough]];
    case NormEstimate::kNegativeBeta:
      log_rest += (-2.0 - 0.75 * nd) * std::log(2.0) + (-2.0 - 3.0 * nd) / 4.0 * std::log(kPi) +
                  (1.0 + beta + nd) / 4.0 * std::log(sigma) +
                  ((1.0 + beta - nd) / 4.0 - ld) * std::log(c) + c * sigma / 2.0;
      break;
    case NormEstimate::kBessel: {
      double log_bracket = -std::log(special::bessel_k0(1.0));
      if (1.0 / c < sigma) {
        const double log_b = std::log(2.0 * std::sqrt(3.0)) + 0.5 * std::log(c * sigma) + c * sigma;
        log_bracket = log_add_exp(log_bracket, log_b);
      }
      log_rest = (-2.0 + (-3.0 * nd + beta) / 4.0) * std::log(2.0) +
                 (-3.0 * nd - 1.0) / 4.0 * std::log(kPi) + (beta / 2.0 - ld) * std::log(c) +
                 0.5 * log_bracket;
      break;
    }
  }
  return l2_norm * std::exp(log_common + log_rest);
}

}  // namespace mqshape
