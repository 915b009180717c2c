#include <cmath>

#include "doctest.h"
#include "mqshape/errors.hpp"
#include "mqshape/golden.hpp"
#include "mqshape/shape.hpp"
#include "oracles.hpp"

using namespace mqshape;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("classification") {
  CHECK(classify(1, 1.0, 1) == MNCase::kCase1b);
  CHECK(classify(2, -1.0, 2) == MNCase::kCase2);
  CHECK(classify(1, -1.0, 1) == MNCase::kCase3);
  CHECK(classify(1, -1.0, 7) == MNCase::kCase3);
  CHECK(classify(1, 6.5, 1) == MNCase::kCase1a);
  CHECK(classify(1, -2.0, 3) == MNCase::kCase2);
  CHECK(classify(3, -2.0, 3) == MNCase::kCase2);
  CHECK_THROWS_AS(classify(1, -0.5, 1), UnsupportedCaseError);
  CHECK_THROWS_AS(classify(2, -1.5, 1), UnsupportedCaseError);
  CHECK_THROWS_AS(classify(2, 4.0, 1), DomainError);
  CHECK_THROWS_AS(classify(2, 1.0, 0), DomainError);

  const MNProblem p2 = MNProblem::make(2, -1.0, 1.0, 2);
  CHECK(p2.exponent == -2.5);
  const MNProblem p3 = MNProblem::make(1, -1.0, 1.0, 2);
  CHECK(p3.exponent == -2.5);
  CHECK(MNProblem::make(1, 1.0, 1.0, 1).exponent == -0.75);
}

TEST_CASE("MN values") {
  const MNProblem p2 = MNProblem::make(2, -1.0, 1.0, 2);
  CHECK(mn_value(p2, 5.0) / mn_value(p2, 1.0) == doctest::Approx(std::exp(2.0) * std::pow(5.0, -2.5)).epsilon(1e-13));
  CHECK(mn_value(p2, 3.0) == doctest::Approx(oracle::mn_power(3.0, 1.0, -2.5)).epsilon(1e-14));
  CHECK_THROWS_AS(mn_value(p2, 0.0), DomainError);

  const double k0 = oracle::bessel_k0_quadrature(1.0);
  const MNProblem p3 = MNProblem::make(1, -1.0, 1.0, 2);
  CHECK(mn_value(p3, 1.0) == doctest::Approx(1.0 / std::sqrt(k0)).epsilon(1e-10));
  CHECK(mn_value(p3, 1.0) == doctest::Approx(1.5411550988).epsilon(1e-9));
  const double right = mn_piece_value(p3, 1.0, Case3Piece::kRight);
  CHECK(right == doctest::Approx(std::sqrt(1.0 / k0 + 2.0 * std::sqrt(3.0) * std::exp(1.0))).epsilon(1e-10));
  CHECK(right == doctest::Approx(3.4338846).epsilon(1e-7));
  for (double c : {0.1, 0.7, 1.3, 4.0, 20.0}) {
    CHECK(mn_value(p3, c) == doctest::Approx(oracle::mn_bessel(c, 1.0, 2, k0)).epsilon(1e-10));
  }
}

TEST_CASE("log MN differences match direct evaluation") {
  for (const MNProblem& p : {MNProblem::make(2, -1.0, 1.0, 2), MNProblem::make(3, 1.5, 0.5, 4),
                             MNProblem::make(1, -1.0, 2.0, 3)}) {
    for (double a : {0.7, 1.1, 3.0}) {
      for (double b : {0.9, 2.0, 5.0}) {
        const double direct = std::log(mn_piece_value(p, a, Case3Piece::kRight)) -
                              std::log(mn_piece_value(p, b, Case3Piece::kRight));
        CHECK(log_mn_difference(p, std::log(a), std::log(b)) == doctest::Approx(direct).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("closed-form minimizer") {
  CHECK(closed_form_cstar(2, -1.0, 2, 1.0) == 5.0);
  CHECK(closed_form_cstar(1, 1.0, 1, 1.0) == 1.5);
  CHECK(closed_form_cstar(2, -1.0, 2, 2.0) == 2.5);
  CHECK_THROWS_AS(closed_form_cstar(1, 6.5, 1, 1.0), DomainError);
  CHECK_THROWS_AS(closed_form_cstar(1, -1.0, 1, 1.0), DomainError);
}

TEST_CASE("golden section on a smooth function") {
  const auto f = [](double x) { return (x - 0.3) * (x - 0.3); };
  const GoldenResult r = golden_section_minimize([&](double a, double b) { return f(a) - f(b); }, -2.0, 5.0, 1e-9);
  CHECK(std::abs(r.x - 0.3) < 1e-8);
  CHECK(r.hi - r.lo <= 1e-9);
  CHECK(r.iterations > 0);
}

TEST_CASE("numeric minimizer equals the closed form on the parameter grid") {
  int checked = 0;
  for (int n = 1; n <= 5; ++n) {
    for (double beta : {-1.0, -0.5, 0.5, 1.0, 1.5, 3.5}) {
      for (unsigned l = 1; l <= 6; ++l) {
        for (double sigma : {0.5, 1.0, 4.0}) {
          MNCase kind;
          try {
            kind = classify(n, beta, l);
          } catch (const UnsupportedCaseError&) {
            continue;
          }
          if (kind != MNCase::kCase1b && kind != MNCase::kCase2) continue;
          CAPTURE(n);
          CAPTURE(beta);
          CAPTURE(l);
          CAPTURE(sigma);
          const MNProblem p = MNProblem::make(n, beta, sigma, l);
          const MNResult r = optimal_c(p, SweepInterval::default_for(sigma));
          const double closed = closed_form_cstar(n, beta, l, sigma);
          CHECK(r.optimal_c == closed);
          REQUIRE(r.diagnostics.numeric_c.has_value());
          CHECK(rel(*r.diagnostics.numeric_c, closed) <= 1e-8);
          CHECK(!r.boundary_optimum);
          // Scale invariance of the argmin.
          const MNResult scaled = optimal_c(MNProblem::make(n, beta, sigma, l, 1000.0), SweepInterval::default_for(sigma));
          CHECK(scaled.optimal_c == r.optimal_c);
          CHECK(r.optimal_c * sigma == doctest::Approx(closed_form_cstar(n, beta, l, 1.0)).epsilon(1e-12));
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("optimal c: worked examples") {
  const MNResult c2 = optimal_c(MNProblem::make(2, -1.0, 1.0, 2), {0.01, 100.0});
  CHECK(std::abs(c2.optimal_c - 5.0) < 1e-6);
  CHECK(c2.kind == MNCase::kCase2);

  const MNResult c3 = optimal_c(MNProblem::make(1, -1.0, 1.0, 2), {0.01, 100.0});
  CHECK(std::abs(c3.optimal_c - 4.5) < 0.1);
  CHECK(std::abs(c3.mn_at_optimum - 0.600) < 0.005);
  CHECK(c3.mn_at_optimum < 1.5411);
  REQUIRE(c3.diagnostics.left_candidate.has_value());
  REQUIRE(c3.diagnostics.right_candidate.has_value());
  CHECK(c3.mn_at_optimum <= c3.diagnostics.left_candidate->mn);
  CHECK(c3.mn_at_optimum <= c3.diagnostics.right_candidate->mn);
  CHECK(c3.optimal_c > 1.0);

  const MNResult c1a = optimal_c(MNProblem::make(1, 6.5, 1.0, 1), {0.2, 10.0});
  CHECK(c1a.boundary_optimum);
  CHECK(c1a.optimal_c == 0.2);
  CHECK(c1a.kind == MNCase::kCase1a);

  CHECK_THROWS_AS(optimal_c(MNProblem::make(2, -1.0, 1.0, 2), {1.0, 0.5}), DomainError);
  CHECK_THROWS_AS(optimal_c(MNProblem::make(2, -1.0, 1.0, 2), {0.0, 5.0}), DomainError);
}

TEST_CASE("case 3 minimum against a dense grid search") {
  const double k0 = oracle::bessel_k0_quadrature(1.0);
  for (unsigned l : {1u, 2u, 3u}) {
    for (double sigma : {0.5, 1.0, 2.0}) {
      const auto best = oracle::grid_search([&](double c) { return oracle::mn_bessel(c, sigma, l, k0); },
                                            0.01 / sigma, 100.0 / sigma, 1e-4 / sigma);
      const MNResult r = optimal_c(MNProblem::make(1, -1.0, sigma, l), {0.01 / sigma, 100.0 / sigma});
      CAPTURE(l);
      CAPTURE(sigma);
      CHECK(rel(r.optimal_c, best.c) < 1e-3);
      CHECK(r.mn_at_optimum <= best.value * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("case 3 piece structure") {
  const MNProblem p = MNProblem::make(1, -1.0, 1.0, 2);
  double previous = mn_value(p, 0.01);
  for (double c = 0.011; c <= 1.0; c *= 1.01) {
    const double v = mn_value(p, c);
    CHECK(v < previous);
    previous = v;
  }
  CHECK(mn_piece_value(p, 1.0, Case3Piece::kRight) > mn_piece_value(p, 1.0, Case3Piece::kLeft));
  CHECK(mn_value(p, 50.0) > mn_value(p, 20.0));

  // Right-piece minimizer beyond the sweep gets flagged.
  const MNResult truncated = optimal_c(p, {0.01, 3.0});
  CHECK(!truncated.diagnostics.warnings.empty());
}

TEST_CASE("case 1a is nondecreasing") {
  const MNProblem p = MNProblem::make(1, 6.5, 1.0, 1);
  const auto grid = log_grid(1e-3, 1e3, 300);
  const auto curve = mn_curve(p, grid);
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].mn >= curve[i - 1].mn);
}

TEST_CASE("log grid and curve sampling") {
  const auto grid = log_grid(1e-3, 1e3, 7);
  REQUIRE(grid.size() == 7);
  CHECK(grid.front() == 1e-3);
  CHECK(grid.back() == 1e3);
  CHECK(grid[3] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(log_grid(1.0, 0.5, 3), DomainError);

  const MNProblem p3 = MNProblem::make(1, -1.0, 1.0, 2);
  const auto curve = mn_curve(p3, grid);
  CHECK(curve.size() == grid.size() + 1);
  int at_jump = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (std::abs(curve[i].c - 1.0) < 1e-12) {
      ++at_jump;
      if (at_jump == 2) CHECK(curve[i].mn > curve[i - 1].mn);
    }
  }
  CHECK(at_jump == 2);

  // Off-grid jump point is inserted.
  const auto coarse = mn_curve(p3, log_grid(0.1, 10.0, 4));
  CHECK(coarse.size() == 6);

  // Argmin invariance on the sampler.
  const MNProblem p2 = MNProblem::make(2, -1.0, 1.0, 2);
  const MNProblem p2s = MNProblem::make(2, -1.0, 1.0, 2, 1000.0);
  const auto a = mn_curve(p2, grid);
  const auto b = mn_curve(p2s, grid);
  std::size_t ia = 0, ib = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].mn < a[ia].mn) ia = i;
    if (b[i].mn < b[ib].mn) ib = i;
    CHECK(b[i].mn == doctest::Approx(1000.0 * a[i].mn).epsilon(1e-14));
  }
  CHECK(ia == ib);
}
