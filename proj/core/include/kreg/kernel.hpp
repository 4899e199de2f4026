#pragma once

#include "kreg/types.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace kreg {

// All families are radial, K(x, y) = phi(|x - y|), with phi(0) = 1.
//   Gaussian                exp(-eps^2 r^2)
//   InverseMultiquadric     (1 + eps^2 r^2)^(-1/2)
//   GeneralizedExponential  exp(-r^a),  a in (0, 1]
//   Wendland31              (1 - r/rho)_+^4 (4 r/rho + 1),  positive definite for d <= 3
enum class KernelFamily { Gaussian, InverseMultiquadric, GeneralizedExponential, Wendland31 };

inline constexpr std::array kAllFamilies = {
    KernelFamily::Gaussian, KernelFamily::InverseMultiquadric,
    KernelFamily::GeneralizedExponential, KernelFamily::Wendland31};

// Local Hölder data |K_x(y1) - K_x(y2)| <= C |y1 - y2|^exponent for |y1 - y2| < radius.
struct HolderInfo {
  double exponent = 1.0;
  std::optional<double> constant;
  std::optional<double> radius;

  bool operator==(const HolderInfo&) const = default;
};

class Kernel {
 public:
  // shape is eps (Gaussian, IMQ), the exponent a (GeneralizedExponential) or
  // the support radius rho (Wendland31). Throws ConfigError on invalid input.
  Kernel(KernelFamily family, double shape, std::optional<HolderInfo> holder = {});

  static Kernel gaussian(double eps) { return {KernelFamily::Gaussian, eps}; }
  static Kernel inverse_multiquadric(double eps) {
    return {KernelFamily::InverseMultiquadric, eps};
  }
  static Kernel generalized_exponential(double exponent) {
    return {KernelFamily::GeneralizedExponential, exponent};
  }
  static Kernel wendland31(double support) { return {KernelFamily::Wendland31, support}; }

  KernelFamily family() const { return family_; }
  double shape() const { return shape_; }
  const std::optional<HolderInfo>& holder() const { return holder_; }

  // Declared Hölder exponent: the metadata if set, otherwise the family default
  // (1 for the smooth families, the exponent for GeneralizedExponential).
  double holder_exponent() const;

  Kernel with_holder(HolderInfo info) const { return {family_, shape_, info}; }

  // Radial profile phi as a function of the distance r >= 0.
  double profile(double r) const;
  double diagonal() const { return profile(0.0); }

  // Throws DimensionMismatch if x and y differ in length.
  double eval(PointView x, PointView y) const;
  double operator()(PointView x, PointView y) const { return eval(x, y); }

  bool operator==(const Kernel&) const = default;

 private:
  KernelFamily family_;
  double shape_;
  std::optional<HolderInfo> holder_;
};

std::string_view family_name(KernelFamily family);
std::string_view family_label(KernelFamily family);
std::optional<KernelFamily> parse_family(std::string_view name);

// {"family": "gaussian"|"imq"|"genexp"|"wendland31", "shape": number,
//  "alpha": number?, "support": number?}
nlohmann::json kernel_to_json(const Kernel& kernel);
Kernel kernel_from_json(const nlohmann::json& spec);

std::string describe(const Kernel& kernel);

}  // namespace kreg
