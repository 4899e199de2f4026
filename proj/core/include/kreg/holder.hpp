#pragma once

#include "kreg/domain.hpp"
#include "kreg/kernel.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace kreg {

struct HolderEstimate {
  double alpha = 1.0;      // min(raw_slope, 1)
  double constant = 0.0;   // max |dK| / |dy|^alpha over the samples
  double radius = 0.0;     // pairs satisfy |y1 - y2| < radius
  double raw_slope = 0.0;  // unclamped least-squares slope
  std::size_t pairs_used = 0;
};

using KernelFunction = std::function<double(PointView, PointView)>;

// Empirical local Hölder data of a kernel near the diagonal.
//
// For each sample an anchor x is drawn uniformly in the domain, y1 = x and
// y2 = x + t u with u a random direction and t log-uniform in
// [1e-4 r, r), r = radius or 0.1 * diameter. The exponent is the slope of
// log |K(x, y1) - K(x, y2)| against log |y1 - y2| over samples with a non-zero
// increment, clamped to 1 because no positive definite kernel is Hölder with
// a larger exponent.
//
// Throws DegenerateKernel if every increment vanishes or the slope is not
// positive, ConfigError if num_pairs < 100.
HolderEstimate estimate_holder(const KernelFunction& kernel, const Domain& domain,
                               std::size_t num_pairs, std::uint64_t seed,
                               std::optional<double> radius = {});
HolderEstimate estimate_holder(const Kernel& kernel, const Domain& domain, std::size_t num_pairs,
                               std::uint64_t seed, std::optional<double> radius = {});

}  // namespace kreg
