#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace mqshape::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMargin = 60.0;

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string render_mn_svg(const std::vector<CurvePoint>& curve, std::optional<CurvePoint> minimizer,
                          const std::string& title) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  std::vector<std::pair<double, double>> logs;
  for (const auto& p : curve) {
    if (!(p.c > 0.0) || !(p.mn > 0.0) || !std::isfinite(p.mn)) continue;
    const double x = std::log10(p.c);
    const double y = std::log10(p.mn);
    logs.emplace_back(x, y);
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
  }
  if (logs.empty()) {
    x_lo = y_lo = 0.0;
    x_hi = y_hi = 1.0;
  }
  if (x_hi - x_lo < 1e-12) x_hi = x_lo + 1.0;
  if (y_hi - y_lo < 1e-12) y_hi = y_lo + 1.0;

  auto sx = [&](double x) { return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin); };
  auto sy = [&](double y) {
    return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin);
  };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\">\n",
      kWidth, kHeight, kWidth, kHeight);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += fmt::format("<text x=\"{:.1f}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
                     kWidth / 2, escape(title));
  svg += fmt::format(
      "<path d=\"M{0:.1f} {1:.1f} L{0:.1f} {2:.1f} L{3:.1f} {2:.1f}\" stroke=\"black\" fill=\"none\"/>\n",
      kMargin, kMargin, kHeight - kMargin, kWidth - kMargin);

  for (double d = std::ceil(x_lo); d <= std::floor(x_hi); d += 1.0) {
    svg += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">1e{:.0f}</text>\n",
        sx(d), kHeight - kMargin + 16, d);
  }
  svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">c</text>\n",
                     kWidth / 2, kHeight - 14.0);
  svg += fmt::format(
      "<text x=\"14\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" transform=\"rotate(-90 14 {:.1f})\" "
      "text-anchor=\"middle\">log10 MN(c) [{:.3g}, {:.3g}]</text>\n",
      kHeight / 2, kHeight / 2, y_lo, y_hi);

  svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < logs.size(); ++i) {
    svg += fmt::format("{}{:.2f},{:.2f}", i == 0 ? "" : " ", sx(logs[i].first), sy(logs[i].second));
  }
  svg += "\"/>\n";

  if (minimizer && minimizer->c > 0.0 && minimizer->mn > 0.0 && std::isfinite(minimizer->mn)) {
    const double mx = sx(std::log10(minimizer->c));
    const double my = sy(std::log10(minimizer->mn));
    svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"crimson\"/>\n", mx, my);
    svg += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"10\" fill=\"crimson\">c* = {:.6g}</text>\n",
        mx + 6, my - 6, minimizer->c);
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace mqshape::cli
