#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mqshape::linalg {

/// Row-major dense square-or-rectangular matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  /// Maximum absolute column sum.
  double norm1() const;

  std::vector<double> multiply(std::span<const double> x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// LU factorization with partial (row) pivoting, PA = LU.
///
/// The factorization never throws on singular input; callers inspect
/// min_pivot_ratio() (smallest |u_kk| over the 1-norm of A) and decide.
class LuFactorization {
 public:
  explicit LuFactorization(DenseMatrix a);

  std::size_t size() const noexcept { return lu_.rows(); }
  double norm1() const noexcept { return norm1_; }
  double min_pivot_ratio() const noexcept { return min_pivot_ratio_; }

  std::vector<double> solve(std::span<const double> b) const;
  std::vector<double> solve_transposed(std::span<const double> b) const;

  double determinant() const;

  /// Hager/Higham estimate of ||A^{-1}||_1 times ||A||_1.
  double condition_estimate() const;

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
  double norm1_ = 0.0;
  double min_pivot_ratio_ = 0.0;
};

}  // namespace mqshape::linalg
