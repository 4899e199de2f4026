#pragma once

#include "kreg/convergence.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <string_view>

namespace kreg {

enum class RateQuantity { SupError, Eta };

std::string_view quantity_name(RateQuantity quantity);
std::optional<RateQuantity> parse_quantity(std::string_view name);

// Values at or below this are treated as the double-precision floor.
inline constexpr double kRateFloor = 1e-13;

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_first = 0;
  std::size_t n_last = 0;
  std::size_t used = 0;
  std::size_t excluded = 0;  // records dropped at the floor
};

// Least-squares line through (log h, log q). Throws InsufficientData when
// fewer than 3 points with distinct h remain.
RateFit fit_log_log(std::span<const double> h, std::span<const double> q,
                    std::span<const std::size_t> n = {});

RateFit fit_rate(std::span<const ConvergenceRecord> records, RateQuantity quantity);

// {"slope", "intercept", "r_squared", ...}
nlohmann::json rate_to_json(const RateFit& fit, RateQuantity quantity);

}  // namespace kreg
