#include "kreg/combination.hpp"

#include "kreg/errors.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace kreg {

KernelCombination::KernelCombination(Kernel kernel, PointSet centers, Vector coefficients)
    : kernel_(std::move(kernel)), centers_(std::move(centers)), coefficients_(std::move(coefficients)) {
  if (centers_.rows() != coefficients_.size()) {
    throw DimensionMismatch(std::to_string(centers_.rows()) + " centers but " +
                            std::to_string(coefficients_.size()) + " coefficients");
  }
  check_distinct(centers_);
}

KernelCombination KernelCombination::translate(const Kernel& kernel, const Vector& center) {
  return {kernel, center.transpose(), Vector::Ones(1)};
}

double KernelCombination::value_at(PointView x) const {
  if (centers_.rows() > 0 && x.size() != dim()) {
    throw DimensionMismatch("evaluation point of dimension " + std::to_string(x.size()) +
                            ", combination of dimension " + std::to_string(dim()));
  }
  double sum = 0.0;
  for (Eigen::Index j = 0; j < centers_.rows(); ++j) {
    sum += coefficients_[j] * kernel_.eval(row(centers_, j), x);
  }
  return sum;
}

Vector KernelCombination::evaluate(const PointSet& points, const Execution& exec) const {
  if (centers_.rows() > 0 && static_cast<std::size_t>(points.cols()) != dim()) {
    throw DimensionMismatch("evaluation points of dimension " + std::to_string(points.cols()) +
                            ", combination of dimension " + std::to_string(dim()));
  }
  Vector values(points.rows());
  parallel_for(static_cast<std::size_t>(points.rows()), exec, [&](std::size_t begin, std::size_t end) {
    for (auto i = static_cast<Eigen::Index>(begin); i < static_cast<Eigen::Index>(end); ++i) {
      values[i] = value_at(row(points, i));
    }
  });
  return values;
}

namespace {

void require_same_kernel(const KernelCombination& a, const KernelCombination& b) {
  if (!(a.kernel().family() == b.kernel().family() && a.kernel().shape() == b.kernel().shape())) {
    throw KernelMismatch("combinations use different kernels: " + describe(a.kernel()) + " vs " +
                         describe(b.kernel()));
  }
  if (a.size() > 0 && b.size() > 0 && a.dim() != b.dim()) {
    throw DimensionMismatch("combinations live in different dimensions");
  }
}

}  // namespace

KernelCombination difference(const KernelCombination& a, const KernelCombination& b) {
  require_same_kernel(a, b);
  const Eigen::Index na = a.centers().rows();
  const Eigen::Index nb = b.centers().rows();
  const Eigen::Index d = na > 0 ? a.centers().cols() : b.centers().cols();

  std::vector<Eigen::Index> merged_into(static_cast<std::size_t>(nb), -1);
  Eigen::Index extra = 0;
  for (Eigen::Index k = 0; k < nb; ++k) {
    for (Eigen::Index j = 0; j < na; ++j) {
      if (distance(row(a.centers(), j), row(b.centers(), k)) <= kDuplicateThreshold) {
        merged_into[static_cast<std::size_t>(k)] = j;
        break;
      }
    }
    if (merged_into[static_cast<std::size_t>(k)] < 0) ++extra;
  }

  PointSet centers(na + extra, d);
  Vector coefficients(na + extra);
  if (na > 0) {
    centers.topRows(na) = a.centers();
    coefficients.head(na) = a.coefficients();
  }
  Eigen::Index next = na;
  for (Eigen::Index k = 0; k < nb; ++k) {
    const Eigen::Index target = merged_into[static_cast<std::size_t>(k)];
    if (target >= 0) {
      coefficients[target] -= b.coefficients()[k];
    } else {
      centers.row(next) = b.centers().row(k);
      coefficients[next] = -b.coefficients()[k];
      ++next;
    }
  }
  return {a.kernel(), std::move(centers), std::move(coefficients)};
}

double rkhs_inner(const KernelCombination& g1, const KernelCombination& g2) {
  require_same_kernel(g1, g2);
  const Kernel& kernel = g1.kernel();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < g1.centers().rows(); ++j) {
    double inner = 0.0;
    for (Eigen::Index k = 0; k < g2.centers().rows(); ++k) {
      inner += kernel.eval(row(g1.centers(), j), row(g2.centers(), k)) * g2.coefficients()[k];
    }
    sum += g1.coefficients()[j] * inner;
  }
  return sum;
}

double rkhs_norm(const KernelCombination& g) {
  const double squared = rkhs_inner(g, g);
  if (squared >= 0.0) return std::sqrt(squared);
  // Scale of the quadratic form: sum |c_j||c_k| K(y_j, y_k) <= phi(0) |c|_1^2.
  const double scale = g.kernel().diagonal() * g.coefficients().lpNorm<1>() *
                       g.coefficients().lpNorm<1>();
  if (squared > -1e-12 * scale) return 0.0;
  throw Error("RKHS quadratic form is negative beyond rounding: " + std::to_string(squared));
}

}  // namespace kreg
