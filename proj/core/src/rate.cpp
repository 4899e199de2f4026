#include "kreg/rate.hpp"

#include "kreg/errors.hpp"

#include <cmath>
#include <set>
#include <vector>

namespace kreg {

std::string_view quantity_name(RateQuantity quantity) {
  return quantity == RateQuantity::SupError ? "sup_err" : "eta_n";
}

std::optional<RateQuantity> parse_quantity(std::string_view name) {
  if (name == "sup_err") return RateQuantity::SupError;
  if (name == "eta_n") return RateQuantity::Eta;
  return std::nullopt;
}

RateFit fit_log_log(std::span<const double> h, std::span<const double> q,
                    std::span<const std::size_t> n) {
  if (h.size() != q.size() || (!n.empty() && n.size() != h.size())) {
    throw DimensionMismatch("rate fit inputs differ in length");
  }
  RateFit fit;
  std::vector<double> xs;
  std::vector<double> ys;
  std::set<double> distinct_h;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(q[i] > kRateFloor) || !(h[i] > 0.0)) {
      ++fit.excluded;
      continue;
    }
    xs.push_back(std::log(h[i]));
    ys.push_back(std::log(q[i]));
    distinct_h.insert(h[i]);
    if (!n.empty()) {
      if (fit.used == 0) fit.n_first = n[i];
      fit.n_last = n[i];
    }
    ++fit.used;
  }
  if (fit.used < 3 || distinct_h.size() < 3) {
    throw InsufficientData("rate fit needs at least 3 records above " + std::to_string(kRateFloor) +
                           " with distinct h_n, got " + std::to_string(fit.used));
  }

  const auto count = static_cast<double>(xs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double residual = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    residual += r * r;
  }
  // A perfectly flat series is fitted exactly.
  fit.r_squared = syy > 0.0 ? 1.0 - residual / syy : 1.0;
  return fit;
}

RateFit fit_rate(std::span<const ConvergenceRecord> records, RateQuantity quantity) {
  std::vector<double> h;
  std::vector<double> q;
  std::vector<std::size_t> n;
  for (const auto& record : records) {
    h.push_back(record.h_n);
    q.push_back(quantity == RateQuantity::SupError ? record.sup_err : record.eta_n);
    n.push_back(record.n);
  }
  return fit_log_log(h, q, n);
}

nlohmann::json rate_to_json(const RateFit& fit, RateQuantity quantity) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"r_squared", fit.r_squared},
          {"quantity", std::string(quantity_name(quantity))},
          {"n_first", fit.n_first},
          {"n_last", fit.n_last},
          {"used", fit.used},
          {"excluded", fit.excluded}};
}

}  // namespace kreg
