#include "mqshape/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "mqshape/errors.hpp"

namespace mqshape::linalg {

double DenseMatrix::norm1() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      sum += std::abs((*this)(i, j));
    }
    best = std::max(best, sum);
  }
  return best;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
  if (x.size() != cols_) {
    throw DomainError("DenseMatrix::multiply: dimension mismatch");
  }
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto r = row(i);
    y[i] = std::inner_product(r.begin(), r.end(), x.begin(), 0.0);
  }
  return y;
}

LuFactorization::LuFactorization(DenseMatrix a) : lu_(std::move(a)) {
  const std::size_t n = lu_.rows();
  if (lu_.cols() != n) {
    throw DomainError("LuFactorization: matrix must be square");
  }
  norm1_ = lu_.norm1();
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});

  double min_pivot = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu_(k, j), lu_(p, j));
      }
      std::swap(perm_[k], perm_[p]);
      sign_ = -sign_;
    }
    min_pivot = std::min(min_pivot, best);
    if (best == 0.0) {
      continue;
    }
    const double pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = lu_(i, k) / pivot;
      lu_(i, k) = factor;
      if (factor == 0.0) {
        continue;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        lu_(i, j) -= factor * lu_(k, j);
      }
    }
  }
  if (n == 0) {
    min_pivot_ratio_ = 1.0;
  } else {
    min_pivot_ratio_ = norm1_ > 0.0 ? min_pivot / norm1_ : 0.0;
  }
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
  const std::size_t n = size();
  if (b.size() != n) {
    throw DomainError("LuFactorization::solve: dimension mismatch");
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = b[perm_[i]];
  }
  for (std::size_t i = 0; i < n; ++i) {
    double sum = x[i];
    for (std::size_t j = 0; j < i; ++j) {
      sum -= lu_(i, j) * x[j];
    }
    x[i] = sum;
  }
  for (std::size_t i = n; i-- > 0;) {
    double sum = x[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      sum -= lu_(i, j) * x[j];
    }
    x[i] = sum / lu_(i, i);
  }
  return x;
}

// A^T = U^T L^T P, so solve U^T w = b, L^T v = w, then x = P^T v.
std::vector<double> LuFactorization::solve_transposed(std::span<const double> b) const {
  const std::size_t n = size();
  if (b.size() != n) {
    throw DomainError("LuFactorization::solve_transposed: dimension mismatch");
  }
  std::vector<double> w(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    double sum = w[i];
    for (std::size_t j = 0; j < i; ++j) {
      sum -= lu_(j, i) * w[j];
    }
    w[i] = sum / lu_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double sum = w[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      sum -= lu_(j, i) * w[j];
    }
    w[i] = sum;
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[perm_[i]] = w[i];
  }
  return x;
}

double LuFactorization::determinant() const {
  double det = sign_;
  for (std::size_t i = 0; i < size(); ++i) {
    det *= lu_(i, i);
  }
  return det;
}

double LuFactorization::condition_estimate() const {
  const std::size_t n = size();
  if (n == 0) {
    return 1.0;
  }
  if (min_pivot_ratio_ == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  auto l1 = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += std::abs(e);
    return s;
  };

  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  double estimate = 0.0;
  for (int iter = 0; iter < 5; ++iter) {
    const auto y = solve(x);
    const double next = l1(y);
    if (iter > 0 && next <= estimate) {
      break;
    }
    estimate = next;
    std::vector<double> signs(n);
    for (std::size_t i = 0; i < n; ++i) {
      signs[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    }
    const auto z = solve_transposed(signs);
    std::size_t j = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(z[i]) > std::abs(z[j])) j = i;
    }
    const double zx = std::inner_product(z.begin(), z.end(), x.begin(), 0.0);
    if (iter > 0 && std::abs(z[j]) <= zx) {
      break;
    }
    std::fill(x.begin(), x.end(), 0.0);
    x[j] = 1.0;
  }

  // Higham's alternating-sign safeguard.
  std::vector<double> alt(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = n > 1 ? 1.0 + static_cast<double>(i) / static_cast<double>(n - 1) : 1.0;
    alt[i] = (i % 2 == 0) ? mag : -mag;
  }
  estimate = std::max(estimate, 2.0 * l1(solve(alt)) / (3.0 * static_cast<double>(n)));
  return estimate * norm1_;
}

}  // namespace mqshape::linalg
