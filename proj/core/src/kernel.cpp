#include "kreg/kernel.hpp"

#include "kreg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kreg {

DuplicatePoints::DuplicatePoints(std::size_t first, std::size_t second, double distance)
    : Error("points " + std::to_string(first) + " and " + std::to_string(second) +
            " coincide (distance " + std::to_string(distance) + ")"),
      first_(first),
      second_(second) {}

NotPositiveDefinite::NotPositiveDefinite(std::size_t order, double largest_jitter_tried)
    : Error("Gram matrix of order " + std::to_string(order) +
            " is not numerically positive definite (largest jitter tried: " +
            std::to_string(largest_jitter_tried) + ")"),
      order_(order),
      jitter_(largest_jitter_tried) {}

InterpolationToleranceExceeded::InterpolationToleranceExceeded(double residual,
                                                               double tolerance)
    : Error("interpolation residual " + std::to_string(residual) + " exceeds tolerance " +
            std::to_string(tolerance)),
      residual_(residual),
      tolerance_(tolerance) {}

double distance(PointView a, PointView b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("points of dimension " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

void check_distinct(const PointSet& points) {
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < points.rows(); ++j) {
      const double d = distance(row(points, i), row(points, j));
      if (d <= kDuplicateThreshold) {
        throw DuplicatePoints(static_cast<std::size_t>(i), static_cast<std::size_t>(j), d);
      }
    }
  }
}

Kernel::Kernel(KernelFamily family, double shape, std::optional<HolderInfo> holder)
    : family_(family), shape_(shape), holder_(std::move(holder)) {
  if (!std::isfinite(shape_) || shape_ <= 0.0) {
    throw ConfigError("kernel shape must be a positive finite number");
  }
  if (family_ == KernelFamily::GeneralizedExponential && shape_ > 1.0) {
    throw ConfigError("generalized exponential exponent must lie in (0, 1]");
  }
  if (holder_) {
    // An exponent above one forces a constant kernel, which is not positive definite.
    if (!(holder_->exponent > 0.0 && holder_->exponent <= 1.0)) {
      throw ConfigError("Hölder exponent must lie in (0, 1]");
    }
    if (holder_->constant && !(*holder_->constant > 0.0)) {
      throw ConfigError("Hölder constant must be positive");
    }
    if (holder_->radius && !(*holder_->radius > 0.0)) {
      throw ConfigError("Hölder radius must be positive");
    }
  }
}

double Kernel::holder_exponent() const {
  if (holder_) return holder_->exponent;
  return family_ == KernelFamily::GeneralizedExponential ? shape_ : 1.0;
}

double Kernel::profile(double r) const {
  switch (family_) {
    case KernelFamily::Gaussian: {
      const double s = shape_ * r;
      return std::exp(-s * s);
    }
    case KernelFamily::InverseMultiquadric: {
      const double s = shape_ * r;
      return 1.0 / std::sqrt(1.0 + s * s);
    }
    case KernelFamily::GeneralizedExponential:
      return std::exp(-std::pow(r, shape_));
    case KernelFamily::Wendland31: {
      const double t = r / shape_;
      if (t >= 1.0) return 0.0;
      const double u = 1.0 - t;
      const double u2 = u * u;
      return u2 * u2 * (4.0 * t + 1.0);
    }
  }
  return 0.0;
}

double Kernel::eval(PointView x, PointView y) const { return profile(distance(x, y)); }

std::string_view family_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::Gaussian: return "gaussian";
    case KernelFamily::InverseMultiquadric: return "imq";
    case KernelFamily::GeneralizedExponential: return "genexp";
    case KernelFamily::Wendland31: return "wendland31";
  }
  return "unknown";
}

std::string_view family_label(KernelFamily family) {
  switch (family) {
    case KernelFamily::Gaussian: return "Gaussian";
    case KernelFamily::InverseMultiquadric: return "InverseMultiquadric";
    case KernelFamily::GeneralizedExponential: return "GeneralizedExponential";
    case KernelFamily::Wendland31: return "Wendland31";
  }
  return "Unknown";
}

std::optional<KernelFamily> parse_family(std::string_view name) {
  for (auto family : kAllFamilies) {
    if (family_name(family) == name) return family;
  }
  return std::nullopt;
}

nlohmann::json kernel_to_json(const Kernel& kernel) {
  nlohmann::json spec;
  spec["family"] = std::string(family_name(kernel.family()));
  spec["shape"] = kernel.shape();
  if (kernel.holder()) spec["alpha"] = kernel.holder()->exponent;
  if (kernel.family() == KernelFamily::Wendland31) spec["support"] = kernel.shape();
  return spec;
}

namespace {

double require_number(const nlohmann::json& spec, const char* key) {
  const auto it = spec.find(key);
  if (it == spec.end()) throw ConfigError(std::string("kernel spec is missing \"") + key + "\"");
  if (!it->is_number()) throw ConfigError(std::string("kernel field \"") + key + "\" must be a number");
  return it->get<double>();
}

}  // namespace

Kernel kernel_from_json(const nlohmann::json& spec) {
  if (!spec.is_object()) throw ConfigError("kernel spec must be a JSON object");
  for (const auto& [key, value] : spec.items()) {
    if (key != "family" && key != "shape" && key != "alpha" && key != "support") {
      throw ConfigError("unknown kernel field \"" + key + "\"");
    }
  }
  const auto fam = spec.find("family");
  if (fam == spec.end() || !fam->is_string()) {
    throw ConfigError("kernel spec needs a string \"family\"");
  }
  const auto family = parse_family(fam->get<std::string>());
  if (!family) throw ConfigError("unknown kernel family \"" + fam->get<std::string>() + "\"");

  double shape = 0.0;
  if (*family == KernelFamily::Wendland31 && spec.contains("support")) {
    shape = require_number(spec, "support");
    if (spec.contains("shape") && require_number(spec, "shape") != shape) {
      throw ConfigError("wendland31: \"shape\" and \"support\" disagree");
    }
  } else {
    shape = require_number(spec, "shape");
  }

  std::optional<HolderInfo> holder;
  if (spec.contains("alpha")) holder = HolderInfo{require_number(spec, "alpha"), {}, {}};
  return Kernel(*family, shape, holder);
}

std::string describe(const Kernel& kernel) {
  std::ostringstream out;
  out << family_label(kernel.family());
  switch (kernel.family()) {
    case KernelFamily::Gaussian:
    case KernelFamily::InverseMultiquadric: out << "(eps=" << kernel.shape() << ")"; break;
    case KernelFamily::GeneralizedExponential: out << "(alpha=" << kernel.shape() << ")"; break;
    case KernelFamily::Wendland31: out << "(rho=" << kernel.shape() << ")"; break;
  }
  return out.str();
}

}  // namespace kreg
