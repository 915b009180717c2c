#pragma once

#include <functional>

namespace mqshape {

/// difference(a, b) must return (something with the sign of) f(a) - f(b).
/// Supplying the difference directly lets callers cancel common terms
/// analytically, which locates the minimizer far below sqrt(epsilon).
using DifferenceFn = std::function<double(double, double)>;

struct GoldenResult {
  double x = 0.0;
  double lo = 0.0;  // final bracket
  double hi = 0.0;
  int iterations = 0;
};

/// Golden-section search for the minimizer of a unimodal f on [lo, hi];
/// stops once the bracket is narrower than tol.
GoldenResult golden_section_minimize(const DifferenceFn& difference, double lo, double hi, double tol);

}  // namespace mqshape
