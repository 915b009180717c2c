#include "mqshape/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "mqshape/errors.hpp"
#include "mqshape/interp.hpp"
#include "mqshape/kernel.hpp"

namespace mqshape {

namespace {

VerifyConfig validated(VerifyConfig config) {
  if (config.n < 1) {
    throw DomainError(fmt::format("n must be positive, got {}", config.n));
  }
  if (!(config.sigma > 0.0) || !std::isfinite(config.sigma)) {
    throw DomainError(fmt::format("sigma must be positive, got {}", config.sigma));
  }
  const double sqrt_n = std::sqrt(static_cast<double>(config.n));
  if (!config.sigma0) {
    config.sigma0 = config.sigma / sqrt_n;
  } else if (*config.sigma0 * sqrt_n > config.sigma * (1.0 + 1e-12)) {
    throw DomainError(fmt::format(
        "sinc band sigma0 = {} puts the target in B_{{{}}}, outside the requested sigma = {}",
        *config.sigma0, *config.sigma0 * sqrt_n, config.sigma));
  }
  norm_estimate_for(config.n, config.beta);
  return config;
}

ScheduleItem resolve_schedule(const BoundConstants& constants, const VerifyConfig& config) {
  ScheduleItem item = make_schedule(constants, config.delta);
  if (config.l_override) {
    const double lower = 1.0 / (3.0 * constants.C * config.delta);
    const double l = static_cast<double>(*config.l_override);
    if (l < lower * (1.0 - 1e-12) || l > 2.0 * lower * (1.0 + 1e-12)) {
      throw DomainError(fmt::format("l = {} outside the admissible interval [{}, {}] for delta = {}",
                                    *config.l_override, lower, 2.0 * lower, config.delta));
    }
    item.l = *config.l_override;
  }
  return item;
}

unsigned default_dense_degree(int n, unsigned l) {
  const unsigned floor_degree = n == 1 ? 64u : (n == 2 ? 24u : 4u * l);
  return std::max(4u * l, floor_degree);
}

}  // namespace

BoundVerifier::BoundVerifier(const VerifyConfig& config)
    : config_(validated(config)),
      constants_(derived_constants(config_.n, config_.beta, config_.b0)),
      schedule_(resolve_schedule(constants_, config_)),
      target_(config_.n, *config_.sigma0, config_.amplitude),
      problem_(MNProblem::make(config_.n, config_.beta, config_.sigma, schedule_.l)),
      nodes_(evenly_spaced_points(
          scale_to_diameter(Simplex::corner(static_cast<std::size_t>(config_.n)), schedule_.r),
          schedule_.l)),
      dense_degree_(config_.dense_degree > 0 ? std::max(config_.dense_degree, 4u * schedule_.l)
                                             : default_dense_degree(config_.n, schedule_.l)),
      grid_(evenly_spaced_points(nodes_.simplex, dense_degree_).points) {
  values_.reserve(nodes_.size());
  for (const auto& x : nodes_.points) {
    values_.push_back(target_(x));
  }
}

VerifyReport BoundVerifier::run(double c) const {
  VerifyReport report;
  report.c = c;
  report.mn_value = mn_value(problem_, c);
  report.bound_rhs = error_bound_rhs(constants_, c, config_.sigma, config_.delta, schedule_.l,
                                     target_.l2_norm(), config_.s_mn);
  try {
    const Interpolant s = fit(Kernel(config_.beta, c), nodes_, values_);
    report.cond_estimate = s.diagnostics.cond_estimate;
    report.node_residual = s.diagnostics.node_residual;
    report.side_condition = s.diagnostics.side_condition;
    report.empirical_max_error =
        max_error_on_grid(s, [this](std::span<const double> x) { return target_(x); }, grid_);
  } catch (const ConditioningError& e) {
    report.status = VerifyStatus::kInconclusive;
    report.message = e.what();
    report.cond_estimate = std::numeric_limits<double>::infinity();
    report.empirical_max_error = std::numeric_limits<double>::quiet_NaN();
    report.ratio = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  report.holds = report.empirical_max_error <= report.bound_rhs;
  if (report.bound_rhs > 0.0) {
    report.ratio = report.empirical_max_error / report.bound_rhs;
  } else {
    report.ratio = report.empirical_max_error == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return report;
}

}  // namespace mqshape
