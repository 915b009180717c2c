#include "mqshape/shape.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mqshape/errors.hpp"
#include "mqshape/golden.hpp"
#include "mqshape/kernel.hpp"
#include "mqshape/special.hpp"

namespace mqshape {

namespace {

double log_inv_k0() {
  static const double value = -std::log(special::bessel_k0(1.0));
  return value;
}

const double kLogTwoSqrt3 = std::log(2.0 * std::sqrt(3.0));

double log_add_exp(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// Exponent of the B-term of the Case-3 right piece: log(sqrt(c sigma) e^{c sigma}) at c = e^u.
double case3_b_exponent(double sigma, double u) { return 0.5 * (std::log(sigma) + u) + sigma * std::exp(u); }

double log_mn_core(const MNProblem& p, double c, Case3Piece piece) {
  const double log_c = std::log(c);
  switch (p.kind) {
    case MNCase::kCase1a:
    case MNCase::kCase1b:
    case MNCase::kCase2:
      return 0.5 * c * p.sigma + p.exponent * log_c;
    case MNCase::kCase3:
      if (piece == Case3Piece::kLeft) {
        return 0.5 * log_inv_k0() + p.exponent * log_c;
      }
      return p.exponent * log_c +
             0.5 * log_add_exp(log_inv_k0(), kLogTwoSqrt3 + case3_b_exponent(p.sigma, log_c));
  }
  return 0.0;
}

void require_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw DomainError(fmt::format("MN(c) requires finite c > 0, got {}", c));
  }
}

}  // namespace

std::string_view case_name(MNCase kind) {
  switch (kind) {
    case MNCase::kCase1a: return "Case1a";
    case MNCase::kCase1b: return "Case1b";
    case MNCase::kCase2: return "Case2";
    case MNCase::kCase3: return "Case3";
  }
  return "?";
}

MNCase classify(int n, double beta, unsigned l) {
  if (n < 1) {
    throw DomainError(fmt::format("dimension n must be positive, got {}", n));
  }
  if (l < 1) {
    throw DomainError("node degree l must be at least 1");
  }
  cpd_order(beta);
  const double nd = static_cast<double>(n);
  if (beta > 0.0) {
    return 1.0 + beta - nd - 4.0 * l >= 0.0 ? MNCase::kCase1a : MNCase::kCase1b;
  }
  if (beta == -1.0 && n == 1) {
    return MNCase::kCase3;
  }
  if (nd + beta >= 1.0 || nd + beta == -1.0) {
    return MNCase::kCase2;
  }
  throw UnsupportedCaseError(
      fmt::format("n = {}, beta = {} is not covered: beta < 0 requires n + beta >= 1 or n + beta = -1 "
                  "(or beta = -1 with n = 1)",
                  n, beta));
}

MNProblem MNProblem::make(int n, double beta, double sigma, unsigned l, double scale) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError(fmt::format("band radius sigma must be positive, got {}", sigma));
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError(fmt::format("MN scale must be positive, got {}", scale));
  }
  MNProblem p;
  p.kind = classify(n, beta, l);
  p.n = n;
  p.beta = beta;
  p.sigma = sigma;
  p.l = l;
  p.scale = scale;
  p.exponent = p.kind == MNCase::kCase3 ? beta / 2.0 - static_cast<double>(l)
                                        : (1.0 + beta - static_cast<double>(n) - 4.0 * l) / 4.0;
  return p;
}

double mn_piece_value(const MNProblem& problem, double c, Case3Piece piece) {
  require_c(c);
  return problem.scale * std::exp(log_mn_core(problem, c, piece));
}

double mn_value(const MNProblem& problem, double c) {
  require_c(c);
  const Case3Piece piece = c <= 1.0 / problem.sigma ? Case3Piece::kLeft : Case3Piece::kRight;
  return mn_piece_value(problem, c, piece);
}

double log_mn_difference(const MNProblem& p, double log_a, double log_b, Case3Piece piece) {
  const double du = log_a - log_b;
  switch (p.kind) {
    case MNCase::kCase1a:
    case MNCase::kCase1b:
    case MNCase::kCase2:
      // (sigma/2)(e^a - e^b) + p (a - b)
      return 0.5 * p.sigma * std::exp(log_b) * std::expm1(du) + p.exponent * du;
    case MNCase::kCase3: {
      if (piece == Case3Piece::kLeft) {
        return p.exponent * du;
      }
      // 1/2 log((A + B_a)/(A + B_b)) with B_a - B_b = B_b expm1(E_a - E_b).
      const double de = 0.5 * du + p.sigma * std::exp(log_b) * std::expm1(du);
      const double log_b_term = kLogTwoSqrt3 + case3_b_exponent(p.sigma, log_b);
      const double weight = 1.0 / (1.0 + std::exp(log_inv_k0() - log_b_term));  // B_b / (A + B_b)
      // Past de = 30 the 1 in log1p is below rounding; avoid overflowing expm1.
      const double bracket = de > 30.0 ? std::log(weight) + de + std::log1p(-std::exp(-de))
                                       : std::log1p(weight * std::expm1(de));
      return p.exponent * du + 0.5 * bracket;
    }
  }
  return 0.0;
}

double closed_form_cstar(int n, double beta, unsigned l, double sigma) {
  const MNProblem p = MNProblem::make(n, beta, sigma, l);
  if (p.kind != MNCase::kCase1b && p.kind != MNCase::kCase2) {
    throw DomainError(fmt::format("closed-form minimizer only exists for Case1b/Case2, got {}",
                                  case_name(p.kind)));
  }
  return -2.0 * p.exponent / sigma;
}

namespace {

MNResult optimal_power_exponential(const MNProblem& problem, SweepInterval sweep) {
  MNResult result;
  result.kind = problem.kind;
  const double closed = -2.0 * problem.exponent / problem.sigma;
  auto diff = [&problem](double a, double b) { return log_mn_difference(problem, a, b); };
  const GoldenResult g =
      golden_section_minimize(diff, std::log(closed / 10.0), std::log(closed * 10.0), kLogCTolerance);
  const double numeric = std::exp(g.x);
  auto& d = result.diagnostics;
  d.iterations = g.iterations;
  d.bracket_lo = closed / 10.0;
  d.bracket_hi = closed * 10.0;
  d.closed_form_c = closed;
  d.numeric_c = numeric;
  d.relative_agreement = std::abs(numeric - closed) / closed;
  if (*d.relative_agreement > 1e-8) {
    d.warnings.push_back(fmt::format("golden-section minimizer {:.17g} disagrees with closed form {:.17g}",
                                     numeric, closed));
  }
  double c = closed;
  if (closed < sweep.lo || closed > sweep.hi) {
    c = closed < sweep.lo ? sweep.lo : sweep.hi;
    d.warnings.push_back(fmt::format(
        "unconstrained minimizer {:.17g} lies outside the sweep interval; clamped to {:.17g}", closed, c));
  }
  result.optimal_c = c;
  result.mn_at_optimum = mn_value(problem, c);
  return result;
}

MNResult optimal_case3(const MNProblem& problem, SweepInterval sweep) {
  MNResult result;
  result.kind = problem.kind;
  auto& d = result.diagnostics;
  const double split = 1.0 / problem.sigma;

  if (sweep.lo <= split) {
    // The left piece c^p with p < 0 decreases, so its minimum sits at its right end.
    const double c_left = std::min(split, sweep.hi);
    d.left_candidate = CurvePoint{c_left, mn_piece_value(problem, c_left, Case3Piece::kLeft)};
  }
  if (sweep.hi > split) {
    const double lo = std::max(sweep.lo, split);
    auto diff = [&problem](double a, double b) {
      return log_mn_difference(problem, a, b, Case3Piece::kRight);
    };
    const GoldenResult g = golden_section_minimize(diff, std::log(lo), std::log(sweep.hi), kLogCTolerance);
    const double c_right = std::exp(g.x);
    d.iterations = g.iterations;
    d.bracket_lo = lo;
    d.bracket_hi = sweep.hi;
    d.numeric_c = c_right;
    d.right_candidate = CurvePoint{c_right, mn_piece_value(problem, c_right, Case3Piece::kRight)};
    if (std::abs(c_right - sweep.hi) <= 1e-6 * sweep.hi) {
      d.warnings.push_back("right-piece minimum is at the upper sweep limit; the true minimizer may lie beyond it");
    }
  }

  const bool take_right =
      d.right_candidate && (!d.left_candidate || d.right_candidate->mn < d.left_candidate->mn);
  const CurvePoint best = take_right ? *d.right_candidate : *d.left_candidate;
  result.optimal_c = best.c;
  result.mn_at_optimum = best.mn;
  result.branch_note = take_right ? "right piece (c > 1/sigma)" : "left piece (c <= 1/sigma)";
  return result;
}

}  // namespace

MNResult optimal_c(const MNProblem& problem, SweepInterval sweep) {
  if (!(sweep.lo > 0.0) || !(sweep.hi > sweep.lo) || !std::isfinite(sweep.hi)) {
    throw DomainError(fmt::format("invalid sweep interval [{}, {}]", sweep.lo, sweep.hi));
  }
  switch (problem.kind) {
    case MNCase::kCase1a: {
      MNResult result;
      result.kind = problem.kind;
      result.optimal_c = sweep.lo;
      result.mn_at_optimum = mn_value(problem, sweep.lo);
      result.boundary_optimum = true;
      result.branch_note = "MN increasing in c; c as small as possible";
      result.diagnostics.bracket_lo = sweep.lo;
      result.diagnostics.bracket_hi = sweep.hi;
      return result;
    }
    case MNCase::kCase1b:
    case MNCase::kCase2:
      return optimal_power_exponential(problem, sweep);
    case MNCase::kCase3:
      return optimal_case3(problem, sweep);
  }
  throw DomainError("optimal_c: unknown case");
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw DomainError(fmt::format("log_grid: need 0 < lo <= hi, got [{}, {}]", lo, hi));
  }
  if (count == 0) {
    throw DomainError("log_grid: count must be positive");
  }
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = std::exp(a + step * static_cast<double>(i));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<CurvePoint> mn_curve(const MNProblem& problem, std::span<const double> grid) {
  std::vector<CurvePoint> out;
  out.reserve(grid.size() + 2);
  const double split = 1.0 / problem.sigma;
  const bool piecewise = problem.kind == MNCase::kCase3;
  bool split_emitted = false;
  auto emit_split = [&] {
    out.push_back({split, mn_piece_value(problem, split, Case3Piece::kLeft)});
    out.push_back({split, mn_piece_value(problem, split, Case3Piece::kRight)});
    split_emitted = true;
  };
  for (double c : grid) {
    if (piecewise && !split_emitted && c >= split) {
      emit_split();
      if (c == split) continue;
    }
    out.push_back({c, mn_value(problem, c)});
  }
  if (piecewise && !split_emitted) {
    emit_split();
  }
  return out;
}

}  // namespace mqshape
