#include "mqshape/golden.hpp"

#include <cmath>

#include "mqshape/errors.hpp"

namespace mqshape {

GoldenResult golden_section_minimize(const DifferenceFn& difference, double lo, double hi, double tol) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("golden_section_minimize: need a finite bracket lo < hi");
  }
  if (!(tol > 0.0)) {
    throw DomainError("golden_section_minimize: tolerance must be positive");
  }
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  int iterations = 0;
  while (b - a > tol && iterations < 500) {
    ++iterations;
    if (difference(x1, x2) < 0.0) {
      b = x2;
      x2 = x1;
      x1 = b - ratio * (b - a);
    } else {
      a = x1;
      x1 = x2;
      x2 = a + ratio * (b - a);
    }
  }
  return {0.5 * (a + b), a, b, iterations};
}

}  // namespace mqshape
