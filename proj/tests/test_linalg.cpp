#include <cmath>
#include <random>

#include "doctest.h"
#include "mqshape/linalg.hpp"

using mqshape::linalg::DenseMatrix;
using mqshape::linalg::LuFactorization;

namespace {

DenseMatrix random_matrix(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng);
  return a;
}

// Exact 1-norm condition number via explicit inverse columns.
double exact_cond1(const DenseMatrix& a) {
  const LuFactorization lu(a);
  const std::size_t n = a.rows();
  double inv_norm = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    double col = 0.0;
    for (double v : lu.solve(e)) col += std::abs(v);
    inv_norm = std::max(inv_norm, col);
  }
  return inv_norm * a.norm1();
}

}  // namespace

TEST_CASE("LU solves random systems") {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const DenseMatrix a = random_matrix(12, seed);
    std::vector<double> x(12);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(1.0 + i);
    const auto b = a.multiply(x);
    const LuFactorization lu(a);
    const auto y = lu.solve(b);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(1e-10));
  }
}

TEST_CASE("transposed solve") {
  const DenseMatrix a = random_matrix(7, 42);
  DenseMatrix at(7, 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) at(i, j) = a(j, i);
  const std::vector<double> b{1, 2, 3, 4, 5, 6, 7};
  const auto x = LuFactorization(a).solve_transposed(b);
  const auto back = at.multiply(x);
  for (std::size_t i = 0; i < 7; ++i) CHECK(back[i] == doctest::Approx(b[i]).epsilon(1e-11));
}

TEST_CASE("determinant and pivoting on a permuted diagonal") {
  DenseMatrix a(3, 3);
  a(0, 1) = 2.0;
  a(1, 2) = 3.0;
  a(2, 0) = 4.0;
  const LuFactorization lu(a);
  CHECK(lu.determinant() == doctest::Approx(24.0));
  CHECK(lu.norm1() == 4.0);
}

TEST_CASE("condition estimate tracks the exact 1-norm condition number") {
  for (unsigned seed = 10; seed < 15; ++seed) {
    const DenseMatrix a = random_matrix(10, seed);
    const double est = LuFactorization(a).condition_estimate();
    const double exact = exact_cond1(a);
    CHECK(est <= exact * (1.0 + 1e-10));
    CHECK(est >= exact / 10.0);
  }
  // Hilbert matrix: famously ill-conditioned.
  DenseMatrix h(6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) h(i, j) = 1.0 / static_cast<double>(i + j + 1);
  CHECK(LuFactorization(h).condition_estimate() > 1e6);
}

TEST_CASE("singular matrix is reported through the pivot ratio") {
  DenseMatrix a(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) a(i, j) = static_cast<double>(i + 1);
  CHECK(LuFactorization(a).min_pivot_ratio() < 1e-15);
}
