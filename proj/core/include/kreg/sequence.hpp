#pragma once

#include "kreg/domain.hpp"
#include "kreg/parallel.hpp"
#include "kreg/types.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace kreg {

enum class GeneratorKind { UniformRandom, Halton, FarthestPoint, ExplicitList };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::FarthestPoint;
  std::uint64_t seed = 0;   // UniformRandom only
  PointSet explicit_points;  // ExplicitList only

  static GeneratorSpec uniform(std::uint64_t seed) { return {GeneratorKind::UniformRandom, seed, {}}; }
  static GeneratorSpec halton() { return {GeneratorKind::Halton, 0, {}}; }
  static GeneratorSpec farthest_point() { return {GeneratorKind::FarthestPoint, 0, {}}; }
  static GeneratorSpec explicit_list(PointSet points) {
    return {GeneratorKind::ExplicitList, 0, std::move(points)};
  }
};

std::string_view generator_name(GeneratorKind kind);
std::optional<GeneratorKind> parse_generator(std::string_view name);

// Open ball that sampling points must avoid.
struct AvoidBall {
  Vector center;
  double radius = 0.0;

  bool contains(PointView p) const;
};

struct FillDistance {
  double value = 0.0;
  double grid_spacing = 0.0;
  // Upper bound on (true sup) - value.
  double gap_bound = 0.0;
};

// Max over the evaluation grid (and any extra probe points) of the distance
// to the nearest point of `points`. Throws DomainError for an empty set.
FillDistance fill_distance(const PointSet& points, const Domain& domain,
                           const PointSet& extra_probes = {}, const Execution& exec = {});

// h_n for every prefix X_1, ..., X_N in one pass.
std::vector<double> prefix_fill_distances(const PointSet& points, const Domain& domain,
                                          const PointSet& extra_probes = {},
                                          const Execution& exec = {});

// Radical inverse of `index` in `base`; halton_point uses the first d primes.
double radical_inverse(std::uint64_t index, unsigned base);
Vector halton_point(std::uint64_t index, std::size_t dim);

// Ordered, pairwise distinct points inside a domain, with cached h_n.
class PointSequence {
 public:
  PointSequence(PointSet points, GeneratorSpec generator, const Domain& domain,
                std::optional<AvoidBall> avoid = {}, const Execution& exec = {});

  std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(points_.cols()); }
  const PointSet& points() const { return points_; }
  PointSet prefix(std::size_t n) const;
  const GeneratorSpec& generator() const { return generator_; }
  const std::optional<AvoidBall>& avoided_ball() const { return avoid_; }

  // h_n for the prefix of size n, 1 <= n <= size().
  double fill_distance(std::size_t n) const;
  const std::vector<double>& fill_distances() const { return fill_; }
  double grid_spacing() const { return grid_spacing_; }

 private:
  PointSet points_;
  GeneratorSpec generator_;
  std::optional<AvoidBall> avoid_;
  std::vector<double> fill_;
  double grid_spacing_ = 0.0;
};

PointSequence generate(const GeneratorSpec& generator, const Domain& domain, std::size_t n,
                       const Execution& exec = {});

// Same as generate() but never places a point inside the open ball. Throws
// DomainError when the ball leaves no admissible grid point.
PointSequence avoid_ball_generate(const GeneratorSpec& generator, const Domain& domain,
                                  std::size_t n, const AvoidBall& ball,
                                  const Execution& exec = {});

}  // namespace kreg
