#pragma once

#include "kreg/combination.hpp"
#include "kreg/domain.hpp"
#include "test_support.hpp"

namespace kreg::testing {

// Seeded (kernel, X, f_{c,Y}) instances with conditioning kept in range.
struct Instance {
  KernelCombination target;
  PointSet x;
  Domain domain;
};

inline Instance make_instance(std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t d = 1 + seed % 3;
  const auto family = kAllFamilies[seed % kAllFamilies.size()];
  double shape = 0.5;
  switch (family) {
    case KernelFamily::Gaussian: shape = 8.0; break;
    case KernelFamily::InverseMultiquadric: shape = 8.0; break;
    case KernelFamily::GeneralizedExponential: shape = 0.3 + 0.7 * rng.uniform(); break;
    case KernelFamily::Wendland31: shape = 0.3 + 0.5 * rng.uniform(); break;
  }
  const Kernel k(family, shape);
  const std::size_t max_n = d == 1 ? 12 : (d == 2 ? 30 : 40);
  const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(max_n - 1));
  const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform() * 10.0);
  const PointSet y = separated_points(m, d, 1e-3, seed + 1000);
  return {KernelCombination(k, y, random_vector(m, -1.0, 1.0, rng)),
          separated_points(n, d, 0.05, seed + 2000), Domain::unit_box(d, d == 3 ? 11 : 41)};
}

}  // namespace kreg::testing
