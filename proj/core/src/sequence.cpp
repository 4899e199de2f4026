#include "kreg/sequence.hpp"

#include "kreg/errors.hpp"
#include "kreg/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace kreg {

namespace {

constexpr std::array<unsigned, 16> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19,
                                              23, 29, 31, 37, 41, 43, 47, 53};

// Squared distance; comparisons on the squared value avoid sqrt rounding ties.
double squared_distance(PointView a, PointView b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

PointSet stack_probes(const Domain& domain, const PointSet& extra) {
  PointSet grid = domain.grid();
  if (extra.rows() == 0) return grid;
  if (static_cast<std::size_t>(extra.cols()) != domain.dim()) {
    throw DimensionMismatch("probe points do not match the domain dimension");
  }
  PointSet all(grid.rows() + extra.rows(), grid.cols());
  all << grid, extra;
  return all;
}

void check_dimension(const PointSet& points, const Domain& domain) {
  if (static_cast<std::size_t>(points.cols()) != domain.dim()) {
    throw DimensionMismatch("points of dimension " + std::to_string(points.cols()) +
                            " in a domain of dimension " + std::to_string(domain.dim()));
  }
}

// Updates best[p] = min(best[p], |probe_p - point|^2) and returns the max.
double absorb_point(const PointSet& probes, PointView point, std::vector<double>& best,
                    const Execution& exec) {
  const std::size_t count = best.size();
  parallel_for(count, exec, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const double d2 = squared_distance(row(probes, static_cast<Eigen::Index>(p)), point);
      if (d2 < best[p]) best[p] = d2;
    }
  });
  // Max is order independent, so the sequential reduction matches any split.
  return *std::max_element(best.begin(), best.end());
}

}  // namespace

std::string_view generator_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::UniformRandom: return "uniform";
    case GeneratorKind::Halton: return "halton";
    case GeneratorKind::FarthestPoint: return "farthest";
    case GeneratorKind::ExplicitList: return "explicit";
  }
  return "unknown";
}

std::optional<GeneratorKind> parse_generator(std::string_view name) {
  for (auto kind : {GeneratorKind::UniformRandom, GeneratorKind::Halton,
                    GeneratorKind::FarthestPoint, GeneratorKind::ExplicitList}) {
    if (generator_name(kind) == name) return kind;
  }
  return std::nullopt;
}

bool AvoidBall::contains(PointView p) const { return distance(p, view(center)) < radius; }

FillDistance fill_distance(const PointSet& points, const Domain& domain,
                           const PointSet& extra_probes, const Execution& exec) {
  if (points.rows() == 0) throw DomainError("fill distance of an empty point set");
  check_dimension(points, domain);
  const PointSet probes = stack_probes(domain, extra_probes);
  std::vector<double> best(static_cast<std::size_t>(probes.rows()),
                           std::numeric_limits<double>::infinity());
  parallel_for(best.size(), exec, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const PointView probe = row(probes, static_cast<Eigen::Index>(p));
      for (Eigen::Index k = 0; k < points.rows(); ++k) {
        best[p] = std::min(best[p], squared_distance(probe, row(points, k)));
      }
    }
  });
  const double worst = *std::max_element(best.begin(), best.end());
  return {std::sqrt(worst), domain.grid_spacing(), domain.grid_gap()};
}

std::vector<double> prefix_fill_distances(const PointSet& points, const Domain& domain,
                                          const PointSet& extra_probes, const Execution& exec) {
  check_dimension(points, domain);
  const PointSet probes = stack_probes(domain, extra_probes);
  std::vector<double> best(static_cast<std::size_t>(probes.rows()),
                           std::numeric_limits<double>::infinity());
  std::vector<double> fill;
  fill.reserve(static_cast<std::size_t>(points.rows()));
  for (Eigen::Index k = 0; k < points.rows(); ++k) {
    fill.push_back(std::sqrt(absorb_point(probes, row(points, k), best, exec)));
  }
  return fill;
}

double radical_inverse(std::uint64_t index, unsigned base) {
  double result = 0.0;
  double scale = 1.0 / base;
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale /= base;
  }
  return result;
}

Vector halton_point(std::uint64_t index, std::size_t dim) {
  if (dim > kPrimes.size()) throw DomainError("Halton sequence supports at most 16 dimensions");
  Vector p(static_cast<Eigen::Index>(dim));
  for (std::size_t a = 0; a < dim; ++a) p[static_cast<Eigen::Index>(a)] = radical_inverse(index, kPrimes[a]);
  return p;
}

PointSequence::PointSequence(PointSet points, GeneratorSpec generator, const Domain& domain,
                             std::optional<AvoidBall> avoid, const Execution& exec)
    : points_(std::move(points)), generator_(std::move(generator)), avoid_(std::move(avoid)) {
  if (points_.rows() == 0) throw DomainError("a point sequence needs at least one point");
  check_dimension(points_, domain);
  for (Eigen::Index k = 0; k < points_.rows(); ++k) {
    if (!domain.contains(row(points_, k))) {
      throw DomainError("sequence point " + std::to_string(k) + " lies outside the domain");
    }
    if (avoid_ && avoid_->contains(row(points_, k))) {
      throw DomainError("sequence point " + std::to_string(k) + " lies inside the avoided ball");
    }
  }
  check_distinct(points_);
  PointSet probes;
  if (avoid_) probes = avoid_->center.transpose();
  fill_ = prefix_fill_distances(points_, domain, probes, exec);
  grid_spacing_ = domain.grid_spacing();
}

PointSet PointSequence::prefix(std::size_t n) const {
  if (n == 0 || n > size()) throw DomainError("prefix size out of range");
  return points_.topRows(static_cast<Eigen::Index>(n));
}

double PointSequence::fill_distance(std::size_t n) const {
  if (n == 0 || n > size()) throw DomainError("prefix size out of range");
  return fill_[n - 1];
}

namespace {

PointSet draw_points(const GeneratorSpec& generator, const Domain& domain, std::size_t n,
                     const AvoidBall* ball, const Execution& exec) {
  const std::size_t d = domain.dim();
  PointSet points(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  const Vector extent = domain.upper() - domain.lower();

  auto admissible = [&](PointView p, std::size_t filled) {
    if (ball && ball->contains(p)) return false;
    for (std::size_t k = 0; k < filled; ++k) {
      if (distance(p, row(points, static_cast<Eigen::Index>(k))) <= kDuplicateThreshold) return false;
    }
    return true;
  };

  switch (generator.kind) {
    case GeneratorKind::UniformRandom: {
      Rng rng(generator.seed);
      Vector p(static_cast<Eigen::Index>(d));
      constexpr std::size_t kMaxRejections = 1'000'000;
      std::size_t rejections = 0;
      for (std::size_t k = 0; k < n;) {
        for (std::size_t a = 0; a < d; ++a) {
          const auto i = static_cast<Eigen::Index>(a);
          p[i] = domain.lower()[i] + rng.uniform() * extent[i];
        }
        if (!admissible(view(p), k)) {
          if (++rejections > kMaxRejections) throw DomainError("rejection sampling did not terminate");
          continue;
        }
        points.row(static_cast<Eigen::Index>(k)) = p.transpose();
        ++k;
      }
      break;
    }
    case GeneratorKind::Halton: {
      constexpr std::uint64_t kMaxSkips = 10'000'000;
      std::uint64_t index = 1;
      for (std::size_t k = 0; k < n; ++index) {
        if (index > kMaxSkips + n) throw DomainError("Halton sequence found no admissible points");
        const Vector unit = halton_point(index, d);
        const Vector p = domain.lower() + unit.cwiseProduct(extent);
        if (!admissible(view(p), k)) continue;
        points.row(static_cast<Eigen::Index>(k)) = p.transpose();
        ++k;
      }
      break;
    }
    case GeneratorKind::FarthestPoint: {
      const PointSet grid = domain.grid();
      const auto total = static_cast<std::size_t>(grid.rows());
      // Grid points inside the avoided ball are never selected.
      std::vector<char> allowed(total, 1);
      if (ball) {
        for (std::size_t g = 0; g < total; ++g) {
          allowed[g] = ball->contains(row(grid, static_cast<Eigen::Index>(g))) ? 0 : 1;
        }
      }
      if (std::find(allowed.begin(), allowed.end(), 1) == allowed.end()) {
        throw DomainError("the avoided ball covers every grid point");
      }
      std::vector<double> best(total, std::numeric_limits<double>::infinity());

      Vector start = domain.center();
      if (ball && ball->contains(view(start))) {
        // Admissible grid point closest to the box center, lexicographic ties.
        double closest = std::numeric_limits<double>::infinity();
        std::size_t pick = 0;
        for (std::size_t g = 0; g < total; ++g) {
          if (!allowed[g]) continue;
          const double d2 = squared_distance(row(grid, static_cast<Eigen::Index>(g)), view(start));
          if (d2 < closest) {
            closest = d2;
            pick = g;
          }
        }
        start = grid.row(static_cast<Eigen::Index>(pick)).transpose();
      }
      points.row(0) = start.transpose();
      absorb_point(grid, row(points, 0), best, exec);

      for (std::size_t k = 1; k < n; ++k) {
        double far = -1.0;
        std::size_t pick = total;
        // First strict maximum in grid order is the lexicographic tie-break.
        for (std::size_t g = 0; g < total; ++g) {
          if (allowed[g] && best[g] > far) {
            far = best[g];
            pick = g;
          }
        }
        if (pick == total || std::sqrt(far) <= kDuplicateThreshold) {
          throw DomainError("farthest-point sampling exhausted the grid after " +
                            std::to_string(k) + " points; raise the grid resolution");
        }
        points.row(static_cast<Eigen::Index>(k)) = grid.row(static_cast<Eigen::Index>(pick));
        absorb_point(grid, row(points, static_cast<Eigen::Index>(k)), best, exec);
      }
      break;
    }
    case GeneratorKind::ExplicitList: {
      if (static_cast<std::size_t>(generator.explicit_points.rows()) < n) {
        throw DomainError("explicit point list holds " +
                          std::to_string(generator.explicit_points.rows()) + " points, " +
                          std::to_string(n) + " requested");
      }
      if (static_cast<std::size_t>(generator.explicit_points.cols()) != d) {
        throw DimensionMismatch("explicit points do not match the domain dimension");
      }
      points = generator.explicit_points.topRows(static_cast<Eigen::Index>(n));
      break;
    }
  }
  return points;
}

}  // namespace

PointSequence generate(const GeneratorSpec& generator, const Domain& domain, std::size_t n,
                       const Execution& exec) {
  if (n == 0) throw DomainError("cannot generate an empty sequence");
  return {draw_points(generator, domain, n, nullptr, exec), generator, domain, std::nullopt, exec};
}

PointSequence avoid_ball_generate(const GeneratorSpec& generator, const Domain& domain,
                                  std::size_t n, const AvoidBall& ball, const Execution& exec) {
  if (n == 0) throw DomainError("cannot generate an empty sequence");
  if (static_cast<std::size_t>(ball.center.size()) != domain.dim()) {
    throw DimensionMismatch("ball center does not match the domain dimension");
  }
  if (!(ball.radius > 0.0)) throw DomainError("avoided ball needs a positive radius");
  // The ball swallows the box iff it contains every corner.
  bool covers = true;
  const std::size_t d = domain.dim();
  for (std::size_t mask = 0; mask < (std::size_t{1} << d) && covers; ++mask) {
    Vector corner(static_cast<Eigen::Index>(d));
    for (std::size_t a = 0; a < d; ++a) {
      const auto i = static_cast<Eigen::Index>(a);
      corner[i] = (mask >> a) & 1u ? domain.upper()[i] : domain.lower()[i];
    }
    covers = ball.contains(view(corner));
  }
  if (covers) throw DomainError("the avoided ball covers the whole domain");
  return {draw_points(generator, domain, n, &ball, exec), generator, domain, ball, exec};
}

}  // namespace kreg
