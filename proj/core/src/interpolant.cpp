#include "kreg/interpolant.hpp"

#include "kreg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace kreg {

Interpolant::Interpolant(KernelCombination combination, GramMatrix gram, Vector sample_values,
                         double max_residual)
    : combination_(std::move(combination)),
      gram_(std::move(gram)),
      sample_values_(std::move(sample_values)),
      max_residual_(max_residual) {}

Interpolant fit(const Kernel& kernel, const PointSet& points, const Vector& values,
                const FitOptions& options) {
  if (points.rows() != values.size()) {
    throw DimensionMismatch(std::to_string(points.rows()) + " points but " +
                            std::to_string(values.size()) + " values");
  }
  if (points.rows() == 0) throw DimensionMismatch("cannot fit on an empty point set");

  GramMatrix gram = factorize(assemble_gram(kernel, points, options.exec), options.jitter);
  Vector coefficients = gram.solve(values);
  if (options.refine) {
    const Vector residual = values - gram.entries() * coefficients;
    coefficients += gram.solve(residual);
  }

  const double residual = (gram.entries() * coefficients - values).lpNorm<Eigen::Infinity>();
  const double tolerance = kInterpolationTolerance * (1.0 + values.lpNorm<Eigen::Infinity>());
  if (!(residual <= tolerance)) throw InterpolationToleranceExceeded(residual, tolerance);

  KernelCombination combination(kernel, points, std::move(coefficients));
  return {std::move(combination), std::move(gram), values, residual};
}

double regression_error_rkhs(const KernelCombination& target, const Interpolant& interpolant) {
  return rkhs_norm(difference(interpolant.combination(), target));
}

SupError sup_error(const KernelCombination& target, const Interpolant& interpolant,
                   const Domain& domain, const Execution& exec) {
  const PointSet grid = domain.grid();
  std::vector<double> gaps(static_cast<std::size_t>(grid.rows()));
  parallel_for(gaps.size(), exec, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const PointView x = row(grid, static_cast<Eigen::Index>(i));
      gaps[i] = std::abs(interpolant.combination().value_at(x) - target.value_at(x));
    }
  });
  const double worst = gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
  return {worst, domain.grid_spacing()};
}

double uniform_bound(double error_rkhs, const Kernel& kernel, const Domain& domain) {
  if (error_rkhs < 0.0) throw Error("RKHS error must be non-negative");
  // Every supported family is translation invariant, so K(x, x) = phi(0) on
  // the whole grid.
  (void)domain;
  return error_rkhs * std::sqrt(kernel.diagonal());
}

nlohmann::json interpolant_to_json(const Interpolant& interpolant) {
  nlohmann::json doc;
  doc["kernel"] = kernel_to_json(interpolant.kernel());
  nlohmann::json centers = nlohmann::json::array();
  for (Eigen::Index k = 0; k < interpolant.centers().rows(); ++k) {
    const PointView p = row(interpolant.centers(), k);
    centers.push_back(std::vector<double>(p.begin(), p.end()));
  }
  doc["centers"] = std::move(centers);
  const Vector& c = interpolant.coefficients();
  doc["coefficients"] = std::vector<double>(c.begin(), c.end());
  doc["jitter"] = interpolant.jitter();
  return doc;
}

LoadedInterpolant interpolant_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("kernel") || !doc.contains("centers") ||
      !doc.contains("coefficients")) {
    throw ConfigError("interpolant JSON needs \"kernel\", \"centers\" and \"coefficients\"");
  }
  Kernel kernel = kernel_from_json(doc["kernel"]);
  const auto& centers = doc["centers"];
  const auto& coefficients = doc["coefficients"];
  if (!centers.is_array() || !coefficients.is_array() || centers.size() != coefficients.size()) {
    throw ConfigError("interpolant centers and coefficients must be arrays of equal length");
  }
  const std::size_t n = centers.size();
  const std::size_t d = n > 0 && centers[0].is_array() ? centers[0].size() : 0;
  PointSet points(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  Vector c(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    if (!centers[k].is_array() || centers[k].size() != d) {
      throw ConfigError("interpolant centers must share one dimension");
    }
    for (std::size_t a = 0; a < d; ++a) {
      points(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(a)) = centers[k][a].get<double>();
    }
    c[static_cast<Eigen::Index>(k)] = coefficients[k].get<double>();
  }
  const double jitter = doc.value("jitter", 0.0);
  return {KernelCombination(std::move(kernel), std::move(points), std::move(c)), jitter};
}

}  // namespace kreg
