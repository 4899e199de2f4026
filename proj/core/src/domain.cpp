#include "kreg/domain.hpp"

#include "kreg/errors.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace kreg {

Domain::Domain(Vector lower, Vector upper, std::size_t resolution)
    : lower_(std::move(lower)), upper_(std::move(upper)), resolution_(resolution) {
  if (lower_.size() == 0 || lower_.size() != upper_.size()) {
    throw ConfigError("domain bounds must be non-empty and of equal dimension");
  }
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i])) {
      throw ConfigError("domain needs lower[i] < upper[i] on every axis");
    }
  }
  if (resolution_ < 2) throw ConfigError("evaluation grid needs at least 2 points per axis");
  double total = 1.0;
  for (std::size_t i = 0; i < dim(); ++i) total *= static_cast<double>(resolution_);
  if (total > 5e7) throw ConfigError("evaluation grid is too large");
}

Domain Domain::unit_box(std::size_t dim, std::size_t resolution) {
  return {Vector::Zero(static_cast<Eigen::Index>(dim)),
          Vector::Ones(static_cast<Eigen::Index>(dim)), resolution};
}

bool Domain::contains(PointView p) const {
  if (p.size() != dim()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    if (!(p[i] >= lower_[k] && p[i] <= upper_[k])) return false;
  }
  return true;
}

std::size_t Domain::grid_size() const {
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim(); ++i) total *= resolution_;
  return total;
}

double Domain::grid_spacing() const {
  return (upper_ - lower_).maxCoeff() / static_cast<double>(resolution_ - 1);
}

double Domain::grid_gap() const {
  return 0.5 * std::sqrt(static_cast<double>(dim())) * grid_spacing();
}

PointSet Domain::grid() const {
  const std::size_t d = dim();
  const std::size_t total = grid_size();
  const double last = static_cast<double>(resolution_ - 1);
  PointSet points(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(d));
  std::vector<std::size_t> index(d, 0);
  for (std::size_t p = 0; p < total; ++p) {
    for (std::size_t a = 0; a < d; ++a) {
      const auto k = static_cast<Eigen::Index>(a);
      // Endpoints are hit exactly.
      const double t = static_cast<double>(index[a]) / last;
      points(static_cast<Eigen::Index>(p), k) =
          index[a] + 1 == resolution_ ? upper_[k] : lower_[k] + t * (upper_[k] - lower_[k]);
    }
    for (std::size_t a = d; a-- > 0;) {
      if (++index[a] < resolution_) break;
      index[a] = 0;
    }
  }
  return points;
}

nlohmann::json domain_to_json(const Domain& domain) {
  nlohmann::json spec;
  spec["lower"] = std::vector<double>(domain.lower().begin(), domain.lower().end());
  spec["upper"] = std::vector<double>(domain.upper().begin(), domain.upper().end());
  spec["grid"] = domain.resolution();
  return spec;
}

namespace {

Vector read_vector(const nlohmann::json& value, const char* what) {
  if (!value.is_array() || value.empty()) {
    throw ConfigError(std::string("domain \"") + what + "\" must be a non-empty array");
  }
  Vector v(static_cast<Eigen::Index>(value.size()));
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_number()) {
      throw ConfigError(std::string("domain \"") + what + "\" must contain numbers");
    }
    v[static_cast<Eigen::Index>(i)] = value[i].get<double>();
  }
  return v;
}

}  // namespace

Domain domain_from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) throw ConfigError("domain must be a JSON object");
  if (!spec.contains("lower") || !spec.contains("upper")) {
    throw ConfigError("domain needs \"lower\" and \"upper\"");
  }
  std::size_t grid = 101;
  if (spec.contains("grid")) {
    if (!spec["grid"].is_number_unsigned()) throw ConfigError("domain \"grid\" must be a count");
    grid = spec["grid"].get<std::size_t>();
  }
  return {read_vector(spec["lower"], "lower"), read_vector(spec["upper"], "upper"), grid};
}

}  // namespace kreg
