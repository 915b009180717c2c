#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mqshape/shape.hpp"

namespace mqshape::cli {

/// Log-log polyline of an MN curve, with an optional marker at the minimizer.
std::string render_mn_svg(const std::vector<CurvePoint>& curve, std::optional<CurvePoint> minimizer,
                          const std::string& title);

}  // namespace mqshape::cli
