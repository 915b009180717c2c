#include "mqshape/interp.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "mqshape/errors.hpp"
#include "mqshape/linalg.hpp"

namespace mqshape {

PolyBasis::PolyBasis(std::size_t n, int degree) : n_(n), degree_(std::max(degree, -1)) {
  for (int t = 0; t <= degree_; ++t) {
    auto level = compositions_colex(n_, static_cast<unsigned>(t));
    exponents_.insert(exponents_.end(), std::make_move_iterator(level.begin()),
                      std::make_move_iterator(level.end()));
  }
}

double PolyBasis::evaluate(std::size_t index, std::span<const double> x) const {
  const auto& alpha = exponents_[index];
  double value = 1.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (unsigned e = 0; e < alpha[i]; ++e) {
      value *= x[i];
    }
  }
  return value;
}

double Interpolant::operator()(std::span<const double> x) const {
  double value = 0.0;
  for (std::size_t q = 0; q < poly_coeffs.size(); ++q) {
    value += poly_coeffs[q] * basis.evaluate(q, x);
  }
  for (std::size_t j = 0; j < centers.size(); ++j) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - centers[j][i];
      r2 += d * d;
    }
    value += coeffs[j] * kernel.radial(r2);
  }
  return value;
}

namespace {

std::vector<double> residual(const linalg::DenseMatrix& m, std::span<const double> z,
                             std::span<const double> rhs) {
  std::vector<double> r(rhs.size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    long double sum = rhs[i];
    const auto row = m.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      sum -= static_cast<long double>(row[j]) * z[j];
    }
    r[i] = static_cast<double>(sum);
  }
  return r;
}

}  // namespace

Interpolant fit(const Kernel& kernel, std::vector<Point> centers, std::span<const double> values) {
  const std::size_t count = centers.size();
  if (count == 0) {
    throw DomainError("fit: no centers");
  }
  if (values.size() != count) {
    throw DomainError(fmt::format("fit: {} centers but {} values", count, values.size()));
  }
  const std::size_t n = centers.front().size();
  for (const auto& x : centers) {
    if (x.size() != n) {
      throw DomainError("fit: centers have inconsistent dimension");
    }
  }

  PolyBasis basis = PolyBasis::for_order(n, kernel.order());
  const std::size_t q_count = basis.size();
  if (q_count > count) {
    throw UnisolvencyError(fmt::format(
        "fit: {} centers cannot determine the {} polynomial terms of degree {}", count, q_count,
        basis.degree()));
  }
  const std::size_t size = count + q_count;

  linalg::DenseMatrix system(size, size, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i; j < count; ++j) {
      double r2 = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double d = centers[i][k] - centers[j][k];
        r2 += d * d;
      }
      const double h = kernel.radial(r2);
      system(i, j) = h;
      system(j, i) = h;
    }
    for (std::size_t q = 0; q < q_count; ++q) {
      const double p = basis.evaluate(q, centers[i]);
      system(i, count + q) = p;
      system(count + q, i) = p;
    }
  }

  std::vector<double> rhs(size, 0.0);
  std::copy(values.begin(), values.end(), rhs.begin());

  const linalg::LuFactorization lu(system);
  if (!(lu.min_pivot_ratio() >= kPivotThreshold)) {
    throw ConditioningError(
        fmt::format("fit: interpolation system is numerically singular at c = {} "
                    "(pivot ratio {:.3e} below {:.0e})",
                    kernel.c(), lu.min_pivot_ratio(), kPivotThreshold),
        kernel.c(), lu.min_pivot_ratio());
  }

  auto z = lu.solve(rhs);
  for (int pass = 0; pass < 2; ++pass) {
    const auto correction = lu.solve(residual(system, z, rhs));
    for (std::size_t i = 0; i < size; ++i) {
      z[i] += correction[i];
    }
  }

  Interpolant s{kernel,
                std::move(centers),
                std::vector<double>(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(count)),
                std::vector<double>(z.begin() + static_cast<std::ptrdiff_t>(count), z.end()),
                std::move(basis),
                {}};

  s.diagnostics.cond_estimate = lu.condition_estimate();
  s.diagnostics.min_pivot_ratio = lu.min_pivot_ratio();
  for (std::size_t i = 0; i < count; ++i) {
    s.diagnostics.node_residual =
        std::max(s.diagnostics.node_residual, std::abs(s(s.centers[i]) - values[i]));
  }
  double coeff_l1 = 0.0;
  for (double c : s.coeffs) coeff_l1 += std::abs(c);
  // When the side conditions force c = 0 the computed c is pure rounding noise;
  // measure it against the coefficient size the data itself would produce.
  double y_max = 0.0;
  for (double v : values) y_max = std::max(y_max, std::abs(v));
  coeff_l1 = std::max(coeff_l1, y_max / lu.norm1());
  for (std::size_t q = 0; q < q_count; ++q) {
    double moment = 0.0;
    double q_max = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
      const double qv = s.basis.evaluate(q, s.centers[j]);
      moment += s.coeffs[j] * qv;
      q_max = std::max(q_max, std::abs(qv));
    }
    const double scale = coeff_l1 * q_max;
    if (scale > 0.0) {
      s.diagnostics.side_condition = std::max(s.diagnostics.side_condition, std::abs(moment) / scale);
    }
  }
  return s;
}

Interpolant fit(const Kernel& kernel, const NodeSet& nodes, std::span<const double> values) {
  const int needed = kernel.order() - 1;
  if (static_cast<int>(nodes.degree) < needed) {
    throw UnisolvencyError(fmt::format(
        "fit: lattice degree l = {} is below m - 1 = {}; the nodes do not determine P_{}",
        nodes.degree, needed, needed));
  }
  return fit(kernel, nodes.points, values);
}

double max_error_on_grid(const Interpolant& s, const TargetFunction& f, std::span<const Point> grid) {
  double worst = 0.0;
  for (const auto& x : grid) {
    worst = std::max(worst, std::abs(f(x) - s(x)));
  }
  return worst;
}

}  // namespace mqshape
