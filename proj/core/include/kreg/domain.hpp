#pragma once

#include "kreg/types.hpp"

#include <json.hpp>

#include <cstddef>

namespace kreg {

// Axis-aligned box with a tensor evaluation grid of `resolution` points per
// axis, boundary included. Grid points are ordered lexicographically in their
// coordinates (first axis slowest).
class Domain {
 public:
  Domain(Vector lower, Vector upper, std::size_t resolution);

  static Domain unit_box(std::size_t dim, std::size_t resolution);

  std::size_t dim() const { return static_cast<std::size_t>(lower_.size()); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  std::size_t resolution() const { return resolution_; }

  Vector center() const { return 0.5 * (lower_ + upper_); }
  double diameter() const { return (upper_ - lower_).norm(); }

  bool contains(PointView p) const;

  std::size_t grid_size() const;
  // Largest per-axis grid spacing.
  double grid_spacing() const;
  // Worst-case distance from a point of the box to the nearest grid point,
  // (sqrt(d)/2) * spacing.
  double grid_gap() const;
  PointSet grid() const;

  Domain with_resolution(std::size_t resolution) const { return {lower_, upper_, resolution}; }

 private:
  Vector lower_;
  Vector upper_;
  std::size_t resolution_;
};

// {"lower": [...], "upper": [...], "grid": m}
nlohmann::json domain_to_json(const Domain& domain);
Domain domain_from_json(const nlohmann::json& spec);

}  // namespace kreg
