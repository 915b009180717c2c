#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace mqshape {

/// Which of the four (rho, Delta_0) formulas applies to a given (n, beta).
enum class ConstantsBranch {
  kBelowNegative,  // beta < n - 3, beta < 0   ("a-i")
  kBelowPositive,  // beta < n - 3, beta > 0   ("a-ii")
  kMiddle,         // n - 3 <= beta < n - 1    ("b")
  kAbove,          // beta >= n - 1            ("c")
};

std::string_view branch_tag(ConstantsBranch branch);

/// Normalized fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct RhoDelta0 {
  double rho = 1.0;
  double delta0 = 1.0;
  std::optional<int> s;  // absent on the middle branch
  int m = 0;             // ceil(beta/2) where the branch uses it, else cpd order
  ConstantsBranch branch = ConstantsBranch::kMiddle;
  // rho and Delta_0 are always rational; these are empty only if the exact
  // values overflow 64-bit integers, in which case the doubles are computed directly.
  std::optional<Rational> rho_exact;
  std::optional<Rational> delta0_exact;
};

/// rho and Delta_0 as functions of dimension and kernel exponent.
RhoDelta0 rho_delta0(int n, double beta);

struct BoundConstants {
  int n = 1;
  double beta = -1.0;
  RhoDelta0 def;
  double b0 = 1.0;
  double C = 8.0;             // max{2/(3 b0), 8 rho}
  double delta_max = 1.0 / 24.0;  // 1/(3C), exclusive upper limit for delta
  double lambda_prime = 0.0;  // (2/3)^(1/(3C))
};

BoundConstants derived_constants(int n, double beta, double b0);

/// Smallest integer in [1/(3 C delta), 2/(3 C delta)]; requires 0 < delta < delta_max.
unsigned admissible_l(const BoundConstants& constants, double delta);

/// A (delta, l, r) triple satisfying the error-bound hypotheses.
struct ScheduleItem {
  double delta = 0.0;
  unsigned l = 0;
  double r = 0.0;  // simplex diameter, chosen as 2/(3C)
};

ScheduleItem make_schedule(const BoundConstants& constants, double delta);

/// Native-space norm estimate that applies to an (n, beta) pair.
enum class NormEstimate {
  kPositiveBeta,  // beta > 0, carries sqrt(m! S(m,n))
  kNegativeBeta,  // beta < 0 with n + beta >= 1 or n + beta = -1
  kBessel,        // beta = -1, n = 1
};

/// Throws UnsupportedCaseError for beta < 0 outside the two negative-beta cases.
NormEstimate norm_estimate_for(int n, double beta);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Upper bound on ||f||_h for f band-limited to radius sigma with L2 norm l2_norm.
/// s_mn is the unspecified constant S(m, n), used only when beta > 0.
double native_norm_bound(int n, double beta, double c, double sigma, double l2_norm,
                         double s_mn = 1.0);

/// Full right-hand side of the pointwise error bound for band-limited targets.
double error_bound_rhs(const BoundConstants& constants, double c, double sigma, double delta,
                       unsigned l, double l2_norm, double s_mn = 1.0);

}  // namespace mqshape
