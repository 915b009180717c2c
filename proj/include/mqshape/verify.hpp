#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mqshape/bandlim.hpp"
#include "mqshape/bounds.hpp"
#include "mqshape/shape.hpp"
#include "mqshape/simplex.hpp"

namespace mqshape {

struct VerifyConfig {
  int n = 1;
  double beta = -1.0;
  double b0 = 1.0;
  double sigma = 1.0;                  // band radius fed to the bound
  double delta = 1.0 / 30.0;
  double s_mn = 1.0;
  std::optional<double> sigma0;        // per-axis sinc band; defaults to sigma / sqrt(n)
  double amplitude = 1.0;
  std::optional<unsigned> l_override;  // must still lie in the admissible interval
  unsigned dense_degree = 0;           // evaluation lattice degree; 0 selects a default >= 4l
};

enum class VerifyStatus { kOk, kInconclusive };

struct VerifyReport {
  double c = 0.0;
  VerifyStatus status = VerifyStatus::kOk;
  double empirical_max_error = 0.0;
  double bound_rhs = 0.0;
  double ratio = 0.0;
  bool holds = false;
  double cond_estimate = 0.0;
  double node_residual = 0.0;
  double side_condition = 0.0;
  double mn_value = 0.0;
  std::string message;  // set when inconclusive
};

/// Builds the error-bound setting once (constants, admissible l, scaled simplex,
/// node lattice, evaluation lattice, band-limited target) and checks the bound
/// for any number of shape parameters.
class BoundVerifier {
 public:
  explicit BoundVerifier(const VerifyConfig& config);

  VerifyReport run(double c) const;

  const VerifyConfig& config() const noexcept { return config_; }
  const BoundConstants& constants() const noexcept { return constants_; }
  const ScheduleItem& schedule() const noexcept { return schedule_; }
  const SincTestFunction& target() const noexcept { return target_; }
  const MNProblem& mn_problem() const noexcept { return problem_; }
  const NodeSet& nodes() const noexcept { return nodes_; }
  const std::vector<Point>& grid() const noexcept { return grid_; }
  unsigned dense_degree() const noexcept { return dense_degree_; }

 private:
  VerifyConfig config_;
  BoundConstants constants_;
  ScheduleItem schedule_;
  SincTestFunction target_;
  MNProblem problem_;
  NodeSet nodes_;
  unsigned dense_degree_;
  std::vector<Point> grid_;
  std::vector<double> values_;
};

}  // namespace mqshape
