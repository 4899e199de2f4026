#include "kreg/holder.hpp"

#include "kreg/errors.hpp"
#include "kreg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace kreg {

namespace {

// Draws y2 = x + t u inside the box; flips u if the forward step leaves it.
bool step_inside(const Domain& domain, const Vector& x, const Vector& u, double t, Vector& y2) {
  y2 = x + t * u;
  if (domain.contains(view(y2))) return true;
  y2 = x - t * u;
  return domain.contains(view(y2));
}

}  // namespace

HolderEstimate estimate_holder(const KernelFunction& kernel, const Domain& domain,
                               std::size_t num_pairs, std::uint64_t seed,
                               std::optional<double> radius) {
  if (num_pairs < 100) throw ConfigError("Hölder estimation needs at least 100 pairs");
  const double r = radius.value_or(0.1 * domain.diameter());
  if (!(r > 0.0)) throw ConfigError("Hölder radius must be positive");

  const auto d = static_cast<Eigen::Index>(domain.dim());
  const Vector extent = domain.upper() - domain.lower();
  Rng rng(seed);

  std::vector<double> log_step;
  std::vector<double> log_increment;
  std::vector<double> steps;
  std::vector<double> increments;
  log_step.reserve(num_pairs);
  log_increment.reserve(num_pairs);

  Vector x(d);
  Vector u(d);
  Vector y2(d);
  for (std::size_t s = 0; s < num_pairs; ++s) {
    for (Eigen::Index a = 0; a < d; ++a) x[a] = domain.lower()[a] + rng.uniform() * extent[a];
    double norm = 0.0;
    do {
      for (Eigen::Index a = 0; a < d; ++a) u[a] = rng.normal();
      norm = u.norm();
    } while (norm == 0.0);
    u /= norm;
    const double t = r * std::pow(10.0, -4.0 * rng.uniform());
    if (!step_inside(domain, x, u, t, y2)) continue;

    const double step = distance(view(x), view(y2));
    if (!(step > 0.0) || !(step < r)) continue;
    const double increment = std::abs(kernel(view(x), view(x)) - kernel(view(x), view(y2)));
    if (!(increment > 0.0)) continue;
    steps.push_back(step);
    increments.push_back(increment);
    log_step.push_back(std::log(step));
    log_increment.push_back(std::log(increment));
  }

  if (log_step.size() < 2) {
    throw DegenerateKernel("all sampled kernel increments vanish; the kernel looks constant");
  }

  const auto n = static_cast<double>(log_step.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < log_step.size(); ++i) {
    mean_x += log_step[i];
    mean_y += log_increment[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < log_step.size(); ++i) {
    sxx += (log_step[i] - mean_x) * (log_step[i] - mean_x);
    sxy += (log_step[i] - mean_x) * (log_increment[i] - mean_y);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  if (!(slope > 0.0)) {
    throw DegenerateKernel("kernel increments do not grow with the step; slope " +
                           std::to_string(slope));
  }

  HolderEstimate estimate;
  estimate.raw_slope = slope;
  estimate.alpha = std::min(slope, 1.0);
  estimate.radius = r;
  estimate.pairs_used = log_step.size();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    estimate.constant = std::max(estimate.constant, increments[i] / std::pow(steps[i], estimate.alpha));
  }
  return estimate;
}

HolderEstimate estimate_holder(const Kernel& kernel, const Domain& domain, std::size_t num_pairs,
                               std::uint64_t seed, std::optional<double> radius) {
  return estimate_holder(
      [&kernel](PointView x, PointView y) { return kernel.eval(x, y); }, domain, num_pairs, seed,
      radius);
}

}  // namespace kreg
