#include "kreg/svg_plot.hpp"

#include "kreg/io.hpp"
#include "kreg/rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace kreg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool valid() const { return lo <= hi; }
};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_loglog_svg(const LogLogPlot& plot) {
  Range x;
  Range y;
  for (const auto& r : plot.records) {
    if (!(r.h_n > 0.0)) continue;
    x.add(std::log10(r.h_n));
    if (r.sup_err > kRateFloor) y.add(std::log10(r.sup_err));
    if (r.eta_n > kRateFloor) y.add(std::log10(r.eta_n));
  }
  if (!x.valid()) x = {-1.0, 0.0};
  if (!y.valid()) y = {-1.0, 0.0};
  // Whole decades, at least one wide.
  x.lo = std::floor(x.lo);
  x.hi = std::max(std::ceil(x.hi), x.lo + 1.0);
  y.lo = std::floor(y.lo);
  y.hi = std::max(std::ceil(y.hi), y.lo + 1.0);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double lx) { return kLeft + (lx - x.lo) / (x.hi - x.lo) * plot_w; };
  auto py = [&](double ly) { return kTop + (y.hi - ly) / (y.hi - y.lo) * plot_h; };
  auto num = [](double v) { return format_double(std::round(v * 100.0) / 100.0); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"14\">" << escape(plot.title) << "</text>\n";

  svg << "<g stroke=\"#dddddd\">\n";
  for (double d = x.lo; d <= x.hi + 1e-9; d += 1.0) {
    svg << "<line x1=\"" << num(px(d)) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(px(d))
        << "\" y2=\"" << num(kTop + plot_h) << "\"/>\n";
  }
  for (double d = y.lo; d <= y.hi + 1e-9; d += 1.0) {
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(d)) << "\" x2=\"" << num(kLeft + plot_w)
        << "\" y2=\"" << num(py(d)) << "\"/>\n";
  }
  svg << "</g>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double d = x.lo; d <= x.hi + 1e-9; d += 1.0) {
    svg << "<text x=\"" << num(px(d)) << "\" y=\"" << num(kTop + plot_h + 18)
        << "\" text-anchor=\"middle\">1e" << static_cast<int>(d) << "</text>\n";
  }
  for (double d = y.lo; d <= y.hi + 1e-9; d += 1.0) {
    svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(d) + 4)
        << "\" text-anchor=\"end\">1e" << static_cast<int>(d) << "</text>\n";
  }
  svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 16)
      << "\" text-anchor=\"middle\">fill distance h_n</text>\n";

  auto series = [&](auto value, const char* color, const char* label, double legend_y) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : plot.records) {
      const double v = value(r);
      if (r.h_n > 0.0 && v > kRateFloor) pts.emplace_back(px(std::log10(r.h_n)), py(std::log10(v)));
    }
    if (!pts.empty()) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        svg << (i ? " " : "") << num(pts[i].first) << ',' << num(pts[i].second);
      }
      svg << "\"/>\n";
      for (const auto& [cx, cy] : pts) {
        svg << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"3\" fill=\"" << color
            << "\"/>\n";
      }
    }
    const double lx = kLeft + plot_w + 16;
    svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(legend_y) << "\" x2=\"" << num(lx + 24)
        << "\" y2=\"" << num(legend_y) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(legend_y + 4) << "\">" << label << "</text>\n";
  };
  series([](const ConvergenceRecord& r) { return r.sup_err; }, "#1f77b4", "sup_err", kTop + 12);
  series([](const ConvergenceRecord& r) { return r.eta_n; }, "#d62728", "eta_n", kTop + 32);

  // Reference slope through the first drawable sup_err point.
  for (const auto& r : plot.records) {
    if (!(r.h_n > 0.0 && r.sup_err > kRateFloor)) continue;
    const double x0 = std::log10(r.h_n);
    const double y0 = std::log10(r.sup_err);
    const double y1 = y0 + plot.reference_slope * (x.lo - x0);
    svg << "<line x1=\"" << num(px(x0)) << "\" y1=\"" << num(py(y0)) << "\" x2=\"" << num(px(x.lo))
        << "\" y2=\"" << num(py(y1)) << "\" stroke=\"#555555\" stroke-dasharray=\"6,4\"/>\n";
    break;
  }
  const double lx = kLeft + plot_w + 16;
  svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(kTop + 52) << "\" x2=\"" << num(lx + 24)
      << "\" y2=\"" << num(kTop + 52) << "\" stroke=\"#555555\" stroke-dasharray=\"6,4\"/>\n";
  svg << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(kTop + 56) << "\">slope "
      << format_double(std::round(plot.reference_slope * 1000.0) / 1000.0) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace kreg
