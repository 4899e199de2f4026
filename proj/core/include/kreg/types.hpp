#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>

namespace kreg {

// One point per row. Row-major so that every point is a contiguous span.
using PointSet =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

using PointView = std::span<const double>;

inline PointView row(const PointSet& points, Eigen::Index i) {
  return {points.data() + i * points.cols(),
          static_cast<std::size_t>(points.cols())};
}

inline PointView view(const Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

// Euclidean distance. Every distance in the library goes through here so that
// rejection tests and kernel evaluations agree bit for bit.
double distance(PointView a, PointView b);

// Smallest pairwise distance threshold below which points count as equal.
inline constexpr double kDuplicateThreshold = 1e-14;

// Throws DuplicatePoints if two rows lie within kDuplicateThreshold.
void check_distinct(const PointSet& points);

}  // namespace kreg
