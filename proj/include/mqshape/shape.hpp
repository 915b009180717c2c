#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mqshape {

/// The four shape-parameter regimes.
///   Case1a: beta > 0, 1 + beta - n - 4l >= 0 (MN increasing; take c as small as possible)
///   Case1b: beta > 0, 1 + beta - n - 4l < 0
///   Case2:  beta < 0 with n + beta >= 1 or n + beta = -1
///   Case3:  beta = -1, n = 1 (piecewise MN with a Bessel-K0 constant)
enum class MNCase { kCase1a, kCase1b, kCase2, kCase3 };

std::string_view case_name(MNCase kind);

/// Throws UnsupportedCaseError for negative beta outside Case2/Case3.
MNCase classify(int n, double beta, unsigned l);

struct MNProblem {
  MNCase kind = MNCase::kCase2;
  int n = 1;
  double beta = -1.0;
  double sigma = 1.0;
  unsigned l = 1;
  double exponent = 0.0;  // (1+beta-n-4l)/4 for Case1/2, beta/2 - l for Case3
  double scale = 1.0;     // positive c-independent factor multiplying MN

  static MNProblem make(int n, double beta, double sigma, unsigned l, double scale = 1.0);
};

enum class Case3Piece { kLeft, kRight };

/// MN(c); for Case3 picks the piece by c <= 1/sigma.
double mn_value(const MNProblem& problem, double c);

/// Case3 piece formula evaluated at any c > 0 (used for one-sided limits at 1/sigma).
double mn_piece_value(const MNProblem& problem, double c, Case3Piece piece);

/// log MN(e^a) - log MN(e^b), evaluated without cancellation. Case3 uses the
/// piece of the right-hand formula when `piece` is kRight regardless of a, b.
double log_mn_difference(const MNProblem& problem, double log_a, double log_b,
                         Case3Piece piece = Case3Piece::kRight);

/// Stationary point of e^{c sigma/2} c^p for p < 0: c* = -2p/sigma.
double closed_form_cstar(int n, double beta, unsigned l, double sigma);

struct SweepInterval {
  double lo = 1e-3;
  double hi = 1e3;

  /// [1e-3, 1e3] scaled by 1/sigma.
  static SweepInterval default_for(double sigma) { return {1e-3 / sigma, 1e3 / sigma}; }
};

struct CurvePoint {
  double c = 0.0;
  double mn = 0.0;
};

struct MNDiagnostics {
  int iterations = 0;
  double bracket_lo = 0.0;  // golden-section bracket in c
  double bracket_hi = 0.0;
  std::optional<double> closed_form_c;
  std::optional<double> numeric_c;
  std::optional<double> relative_agreement;
  std::optional<CurvePoint> left_candidate;
  std::optional<CurvePoint> right_candidate;
  std::vector<std::string> warnings;
};

struct MNResult {
  MNCase kind = MNCase::kCase2;
  double optimal_c = 0.0;
  double mn_at_optimum = 0.0;
  bool boundary_optimum = false;
  std::string branch_note;
  MNDiagnostics diagnostics;
};

inline constexpr double kLogCTolerance = 1e-10;

MNResult optimal_c(const MNProblem& problem, SweepInterval sweep);

/// count log-spaced values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

/// MN sampled on the grid. Case3 always gets both one-sided samples at c = 1/sigma
/// (left value first), inserted in order.
std::vector<CurvePoint> mn_curve(const MNProblem& problem, std::span<const double> grid);

}  // namespace mqshape
