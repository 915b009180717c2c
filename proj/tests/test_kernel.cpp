#include <cmath>
#include <random>

#include "doctest.h"
#include "mqshape/errors.hpp"
#include "mqshape/kernel.hpp"

using namespace mqshape;

namespace {

const double kSqrtPi = std::sqrt(3.14159265358979323846);

double norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("c.p.d. order") {
  CHECK(cpd_order(1.0) == 1);
  CHECK(cpd_order(-1.0) == 0);
  CHECK(cpd_order(3.5) == 2);
  CHECK(cpd_order(0.5) == 1);
  CHECK(cpd_order(-7.3) == 0);
  CHECK(cpd_order(5.0) == 3);
  for (double b : {0.0, 2.0, 4.0, 10.0}) CHECK_THROWS_AS(cpd_order(b), DomainError);
  CHECK_NOTHROW(cpd_order(-2.0));
}

TEST_CASE("kernel values") {
  const std::vector<double> origin{0.0};
  const std::vector<double> one{1.0};
  CHECK(Kernel(-1.0, 1.0)(origin) == doctest::Approx(kSqrtPi).epsilon(1e-14));
  CHECK(Kernel(1.0, 1.0)(origin) == doctest::Approx(-2.0 * kSqrtPi).epsilon(1e-14));
  CHECK(Kernel(-1.0, 1.0)(one) == doctest::Approx(kSqrtPi / std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(Kernel(-1.0, 0.0), DomainError);
  CHECK_THROWS_AS(Kernel(-1.0, -2.0), DomainError);
  CHECK_THROWS_AS(Kernel(2.0, 1.0), DomainError);
}

TEST_CASE("kernel radial symmetry under random rotations") {
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  for (double beta : {-1.0, 1.0, 3.5, -0.5}) {
    const Kernel k(beta, 0.7);
    for (int trial = 0; trial < 50; ++trial) {
      for (std::size_t n = 1; n <= 3; ++n) {
        std::vector<double> x(n), y(n), neg(n);
        for (std::size_t d = 0; d < n; ++d) {
          x[d] = g(rng);
          y[d] = g(rng);
          neg[d] = -x[d];
        }
        // Rescale y to the same length: any such y is a rotation of x.
        const double scale = norm(x) / norm(y);
        for (double& v : y) v *= scale;
        CHECK(k(x) == doctest::Approx(k(y)).epsilon(1e-12));
        CHECK(k(x) == k(neg));
      }
    }
  }
}

TEST_CASE("kernel sign and monotonicity along rays") {
  for (double beta : {-3.0, -1.0, -0.5, 0.5, 1.0, 1.5, 3.0, 5.5}) {
    const Kernel k(beta, 1.3);
    const double sign = k.gamma_factor() > 0 ? 1.0 : -1.0;
    double previous = std::abs(k.radial(0.0));
    for (double r = 0.05; r < 20.0; r += 0.05) {
      const std::vector<double> x{r * 0.6, r * 0.8};
      const double v = k(x);
      CHECK(v * sign > 0.0);
      if (beta < 0.0) CHECK(std::abs(v) < previous);
      if (beta > 0.0 && beta < 2.0) CHECK(std::abs(v) > previous);
      previous = std::abs(v);
    }
  }
}
