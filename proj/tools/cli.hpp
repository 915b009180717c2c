#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mqshape::cli {

inline constexpr std::string_view kToolName = "mqshape";
inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitDomain = 2,
  kExitUnsupported = 3,
  kExitConditioning = 4,
};

/// Parsed command line; unset optionals are resolved per subcommand.
struct RunConfig {
  std::string command;
  int n = 1;
  double beta = -1.0;
  double b0 = 1.0;
  double sigma = 1.0;
  std::optional<double> delta;
  std::vector<double> c_values;
  std::optional<double> c_min;
  std::optional<double> c_max;
  std::optional<std::size_t> points;
  std::string format;  // csv | json; empty picks the subcommand default
  std::string out;
  std::string svg;
  double s_mn = 1.0;
  std::optional<double> sigma0;
  std::string testfn = "sinc";
  std::optional<unsigned> l;
  std::optional<double> diameter;
  std::string data;
  double amplitude = 1.0;
  unsigned dense_degree = 0;
};

std::string cmd_constants(const RunConfig& config);
std::string cmd_points(const RunConfig& config);
std::string cmd_fit(const RunConfig& config);
std::string cmd_mn_curve(const RunConfig& config);
std::string cmd_optimal_c(const RunConfig& config);
std::string cmd_verify_bound(const RunConfig& config);
std::string cmd_sweep(const RunConfig& config);

/// Accepts plain decimals and fractions such as "1/30".
double parse_real(std::string_view text);

/// Full command-line entry point; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mqshape::cli
