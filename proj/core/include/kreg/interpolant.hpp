#pragma once

#include "kreg/combination.hpp"
#include "kreg/domain.hpp"
#include "kreg/gram.hpp"

#include <json.hpp>

namespace kreg {

struct FitOptions {
  JitterPolicy jitter = JitterPolicy::none();
  // One step of iterative refinement against the unjittered Gram matrix.
  bool refine = false;
  Execution exec;
};

// Interpolation conditions must hold to within this of (1 + max |f_X|).
inline constexpr double kInterpolationTolerance = 1e-8;

// Kernel interpolant s_{f,X}: the combination over X whose values at X equal
// the samples, i.e. the orthogonal projection of f onto span{K(x, .) : x in X}.
class Interpolant {
 public:
  Interpolant(KernelCombination combination, GramMatrix gram, Vector sample_values,
              double max_residual);

  const KernelCombination& combination() const { return combination_; }
  const GramMatrix& gram() const { return gram_; }
  const Vector& sample_values() const { return sample_values_; }
  const Kernel& kernel() const { return combination_.kernel(); }
  const PointSet& centers() const { return combination_.centers(); }
  const Vector& coefficients() const { return combination_.coefficients(); }
  double jitter() const { return gram_.jitter(); }
  // max_k |s(x_k) - f(x_k)| measured after the solve.
  double max_residual() const { return max_residual_; }

  Vector evaluate(const PointSet& points, const Execution& exec = {}) const {
    return combination_.evaluate(points, exec);
  }

 private:
  KernelCombination combination_;
  GramMatrix gram_;
  Vector sample_values_;
  double max_residual_;
};

// Solves A_{K,X} c = f_X through the Cholesky factor. Throws
// NotPositiveDefinite, DuplicatePoints, DimensionMismatch and
// InterpolationToleranceExceeded.
Interpolant fit(const Kernel& kernel, const PointSet& points, const Vector& values,
                const FitOptions& options = {});

// eta = |s - f|_K, exact for combination targets.
double regression_error_rkhs(const KernelCombination& target, const Interpolant& interpolant);

struct SupError {
  double value = 0.0;
  double grid_spacing = 0.0;  // value is a lower bound on the true sup
};

SupError sup_error(const KernelCombination& target, const Interpolant& interpolant,
                   const Domain& domain, const Execution& exec = {});

// err_K * max over the grid of sqrt(K(x, x)).
double uniform_bound(double error_rkhs, const Kernel& kernel, const Domain& domain);

// {"kernel": ..., "centers": [[...], ...], "coefficients": [...], "jitter": lambda}
nlohmann::json interpolant_to_json(const Interpolant& interpolant);

struct LoadedInterpolant {
  KernelCombination combination;
  double jitter = 0.0;
};
LoadedInterpolant interpolant_from_json(const nlohmann::json& doc);

}  // namespace kreg
