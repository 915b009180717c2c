#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mqshape/kernel.hpp"
#include "mqshape/simplex.hpp"

namespace mqshape {

/// Monomial basis of the polynomials of total degree <= degree in n variables,
/// graded by total degree and colexicographic within a degree. degree < 0 is
/// the empty basis.
class PolyBasis {
 public:
  PolyBasis(std::size_t n, int degree);

  /// Basis for P_{m-1}, the polynomial block matching c.p.d. order m.
  static PolyBasis for_order(std::size_t n, int order) { return PolyBasis(n, order - 1); }

  std::size_t dim() const noexcept { return n_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return exponents_.size(); }
  const std::vector<std::vector<unsigned>>& exponents() const noexcept { return exponents_; }

  double evaluate(std::size_t index, std::span<const double> x) const;

 private:
  std::size_t n_;
  int degree_;
  std::vector<std::vector<unsigned>> exponents_;
};

struct FitDiagnostics {
  double cond_estimate = 0.0;    // 1-norm estimate for the full saddle-point matrix
  double min_pivot_ratio = 0.0;  // smallest |pivot| / ||M||_1
  double node_residual = 0.0;    // max_i |s(x_i) - y_i|
  double side_condition = 0.0;   // max_q |sum_j c_j q(x_j)| / (max(||c||_1, ||y||_inf / ||M||_1) max_i |q(x_i)|)
};

/// s(x) = p(x) + sum_j c_j h(x - x_j).
struct Interpolant {
  Kernel kernel;
  std::vector<Point> centers;
  std::vector<double> coeffs;
  std::vector<double> poly_coeffs;
  PolyBasis basis;
  FitDiagnostics diagnostics;

  double operator()(std::span<const double> x) const;
};

inline constexpr double kPivotThreshold = 1e-13;

/// Solves [[A, P], [P^T, 0]] [c; a] = [y; 0] with A_ij = h(x_i - x_j), P_iq = q(x_i).
/// Throws ConditioningError when a pivot falls below kPivotThreshold * ||M||_1.
Interpolant fit(const Kernel& kernel, std::vector<Point> centers, std::span<const double> values);

/// As above, additionally rejecting lattices of degree l < m - 1 (UnisolvencyError).
Interpolant fit(const Kernel& kernel, const NodeSet& nodes, std::span<const double> values);

using TargetFunction = std::function<double(std::span<const double>)>;

double max_error_on_grid(const Interpolant& s, const TargetFunction& f, std::span<const Point> grid);

}  // namespace mqshape
