#pragma once

#include "kreg/combination.hpp"
#include "kreg/domain.hpp"
#include "kreg/gram.hpp"
#include "kreg/kernel.hpp"
#include "kreg/sequence.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kreg {

// Either explicit centers/coefficients or a seeded random combination.
struct TargetSpec {
  PointSet centers;
  Vector coefficients;

  std::size_t random_terms = 0;  // > 0 selects the random form
  double coefficient_low = -1.0;
  double coefficient_high = 1.0;

  bool is_random() const { return random_terms > 0; }
};

enum class HolderSource { Declared, Estimated };

struct HolderSpec {
  HolderSource source = HolderSource::Estimated;
  std::size_t pairs = 2000;     // Estimated
  double alpha = 1.0;           // Declared
  double constant = 0.0;        // Declared
};

struct ExperimentConfig {
  std::string name;
  Kernel kernel = Kernel::gaussian(1.0);
  Domain domain = Domain::unit_box(1, 101);
  GeneratorKind generator = GeneratorKind::FarthestPoint;
  PointSet explicit_points;
  std::optional<AvoidBall> avoid_ball;
  TargetSpec target;
  std::vector<std::size_t> n_schedule;
  HolderSpec holder;
  std::uint64_t seed = 0;
  JitterPolicy jitter;
  bool refine = false;
};

// Powers of two from 4 to 512.
std::vector<std::size_t> default_schedule();

// Strict parse; every violation is a ConfigError naming the offending key.
ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);

struct ResolvedSeeds {
  std::uint64_t master = 0;
  std::uint64_t sequence = 0;
  std::uint64_t target = 0;
  std::uint64_t holder = 0;
};

ResolvedSeeds resolve_seeds(std::uint64_t master);

// Builds the target combination (drawing it for random specs).
KernelCombination build_target(const ExperimentConfig& config, const ResolvedSeeds& seeds);

}  // namespace kreg
