#pragma once

#include "kreg/convergence.hpp"

#include <span>
#include <string>

namespace kreg {

struct LogLogPlot {
  std::string title;
  std::span<const ConvergenceRecord> records;
  // Guide line of this slope, drawn through the first plotted sup_err point.
  double reference_slope = 0.5;
};

// Static SVG with sup_err and eta_n against h_n on log-log axes. Values at or
// below the rate floor are not drawn.
std::string render_loglog_svg(const LogLogPlot& plot);

}  // namespace kreg
