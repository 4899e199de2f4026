#pragma once

#include "kreg/kernel.hpp"
#include "kreg/parallel.hpp"
#include "kreg/types.hpp"

namespace kreg {

// g = sum_j c_j K(y_j, .) with pairwise distinct centers y_j.
class KernelCombination {
 public:
  KernelCombination(Kernel kernel, PointSet centers, Vector coefficients);

  // The single translate K(y, .).
  static KernelCombination translate(const Kernel& kernel, const Vector& center);

  const Kernel& kernel() const { return kernel_; }
  const PointSet& centers() const { return centers_; }
  const Vector& coefficients() const { return coefficients_; }
  std::size_t size() const { return static_cast<std::size_t>(centers_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(centers_.cols()); }

  double value_at(PointView x) const;
  // Batch evaluation; each entry is the same sum value_at() computes.
  Vector evaluate(const PointSet& points, const Execution& exec = {}) const;

 private:
  Kernel kernel_;
  PointSet centers_;
  Vector coefficients_;
};

// a - b. Centers closer than kDuplicateThreshold are merged and their
// coefficients summed. Throws KernelMismatch.
KernelCombination difference(const KernelCombination& a, const KernelCombination& b);

// (g1, g2)_K = c1^T [K(y1_j, y2_k)] c2. Throws KernelMismatch.
double rkhs_inner(const KernelCombination& g1, const KernelCombination& g2);
// sqrt((g, g)_K); rounding negatives down to -1e-12 * scale clamp to zero.
double rkhs_norm(const KernelCombination& g);

}  // namespace kreg
