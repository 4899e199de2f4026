#include "kreg/errors.hpp"
#include "kreg/sequence.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace kreg {
namespace {

using testing::points1d;

// Direct nested max/min over the grid.
double brute_fill(const PointSet& x, const Domain& domain) {
  const PointSet grid = domain.grid();
  double worst = 0.0;
  for (Eigen::Index g = 0; g < grid.rows(); ++g) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      double s = 0.0;
      for (Eigen::Index c = 0; c < x.cols(); ++c) {
        const double diff = grid(g, c) - x(i, c);
        s += diff * diff;
      }
      best = std::min(best, std::sqrt(s));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

// Reverse the base-b digits of i by repeated division, spelled out.
double digits_reversed(std::uint64_t i, unsigned b) {
  std::vector<unsigned> digits;
  while (i > 0) {
    digits.push_back(static_cast<unsigned>(i % b));
    i /= b;
  }
  double value = 0.0;
  for (std::size_t k = digits.size(); k-- > 0;) value = (value + digits[k]) / b;
  return value;
}

TEST(FillDistance, EndpointsOnly) {
  const auto h = fill_distance(points1d({0.0, 1.0}), Domain::unit_box(1, 101));
  EXPECT_DOUBLE_EQ(h.value, 0.5);
  EXPECT_DOUBLE_EQ(h.grid_spacing, 0.01);
}

TEST(FillDistance, Midpoint) {
  EXPECT_DOUBLE_EQ(fill_distance(points1d({0.5}), Domain::unit_box(1, 101)).value, 0.5);
}

TEST(FillDistance, HaltonMatchesBruteForce) {
  const Domain box = Domain::unit_box(2, 51);
  const auto seq = generate(GeneratorSpec::halton(), box, 5);
  EXPECT_DOUBLE_EQ(fill_distance(seq.points(), box).value, brute_fill(seq.points(), box));
}

TEST(FillDistance, PrefixScanMatchesIndependentScans) {
  const Domain box = Domain::unit_box(2, 33);
  const auto seq = generate(GeneratorSpec::uniform(4), box, 40);
  const auto all = prefix_fill_distances(seq.points(), box);
  for (std::size_t n = 1; n <= 40; n += 3) {
    EXPECT_DOUBLE_EQ(all[n - 1], brute_fill(seq.prefix(n), box)) << n;
  }
}

TEST(FillDistance, GapBoundReported) {
  const auto h = fill_distance(points1d({0.3}), Domain::unit_box(1, 11));
  EXPECT_DOUBLE_EQ(h.gap_bound, 0.05);
}

TEST(FillDistance, EmptySetRejected) {
  EXPECT_THROW(fill_distance(PointSet(0, 1), Domain::unit_box(1, 11)), DomainError);
}

TEST(FillDistance, ThreadCountIrrelevant) {
  const Domain box = Domain::unit_box(3, 21);
  const auto seq = generate(GeneratorSpec::uniform(9), box, 50);
  EXPECT_EQ(prefix_fill_distances(seq.points(), box, {}, Execution{1}),
            prefix_fill_distances(seq.points(), box, {}, Execution{3}));
}

TEST(Halton, FirstBaseTwoPoints) {
  const auto seq = generate(GeneratorSpec::halton(), Domain::unit_box(1, 101), 4);
  const double expected[] = {0.5, 0.25, 0.75, 0.125};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(seq.points()(i, 0), expected[i]);
    EXPECT_EQ(seq.points()(i, 0), digits_reversed(static_cast<std::uint64_t>(i + 1), 2));
  }
}

TEST(Halton, RadicalInverseMatchesDigitReversal) {
  for (unsigned base : {2u, 3u, 5u, 7u}) {
    for (std::uint64_t i = 1; i < 500; ++i) {
      ASSERT_DOUBLE_EQ(radical_inverse(i, base), digits_reversed(i, base));
    }
  }
}

TEST(Halton, ScaledToBox) {
  const Domain box(testing::vec({-1.0, 2.0}), testing::vec({1.0, 5.0}), 11);
  const auto seq = generate(GeneratorSpec::halton(), box, 1);
  EXPECT_DOUBLE_EQ(seq.points()(0, 0), 0.0);          // -1 + 2 * 1/2
  EXPECT_DOUBLE_EQ(seq.points()(0, 1), 2.0 + 3.0 / 3);  // 2 + 3 * 1/3
}

TEST(FarthestPoint, CenterThenLexicographicTieBreak) {
  const auto seq = generate(GeneratorSpec::farthest_point(), Domain::unit_box(1, 101), 3);
  EXPECT_EQ(seq.points()(0, 0), 0.5);
  EXPECT_EQ(seq.points()(1, 0), 0.0);
  EXPECT_EQ(seq.points()(2, 0), 1.0);
}

TEST(FarthestPoint, GridCapacityExceeded) {
  EXPECT_THROW(generate(GeneratorSpec::farthest_point(), Domain::unit_box(1, 5), 6), DomainError);
}

TEST(Uniform, EqualSeedsGiveEqualSequences) {
  const Domain box = Domain::unit_box(2, 11);
  const auto a = generate(GeneratorSpec::uniform(31), box, 64);
  const auto b = generate(GeneratorSpec::uniform(31), box, 64);
  const auto c = generate(GeneratorSpec::uniform(32), box, 64);
  EXPECT_TRUE((a.points().array() == b.points().array()).all());
  EXPECT_FALSE((a.points().array() == c.points().array()).all());
}

TEST(PointSequenceCtor, RejectsBadInput) {
  const Domain box = Domain::unit_box(1, 11);
  EXPECT_THROW(PointSequence(points1d({0.2, 0.2}), GeneratorSpec::explicit_list({}), box),
               DuplicatePoints);
  EXPECT_THROW(PointSequence(points1d({1.5}), GeneratorSpec::explicit_list({}), box), DomainError);
}

TEST(AvoidBall, UniformPointsStayOutside) {
  const Domain box = Domain::unit_box(1, 101);
  const AvoidBall ball{testing::vec({0.5}), 0.1};
  const auto seq = avoid_ball_generate(GeneratorSpec::uniform(1), box, 100, ball);
  for (Eigen::Index i = 0; i < 100; ++i) EXPECT_GE(std::abs(seq.points()(i, 0) - 0.5), 0.1);
  for (std::size_t n = 1; n <= 100; ++n) EXPECT_GE(seq.fill_distance(n), 0.1);
}

TEST(AvoidBall, CoveringBallRejected) {
  const Domain box = Domain::unit_box(1, 101);
  const AvoidBall ball{testing::vec({0.5}), 1.0};
  EXPECT_THROW(avoid_ball_generate(GeneratorSpec::uniform(1), box, 10, ball), DomainError);
}

TEST(AvoidBall, FarthestPointSkipsBall) {
  const Domain box = Domain::unit_box(2, 41);
  const AvoidBall ball{testing::vec({0.5, 0.5}), 0.2};
  const auto seq = avoid_ball_generate(GeneratorSpec::farthest_point(), box, 200, ball);
  for (Eigen::Index i = 0; i < 200; ++i) ASSERT_FALSE(ball.contains(row(seq.points(), i)));
  EXPECT_GE(seq.fill_distances().back(), 0.2);
}

TEST(AvoidBall, HaltonSkipsBall) {
  const Domain box = Domain::unit_box(2, 41);
  const AvoidBall ball{testing::vec({0.3, 0.6}), 0.15};
  const auto seq = avoid_ball_generate(GeneratorSpec::halton(), box, 300, ball);
  for (std::size_t n = 1; n <= 300; ++n) ASSERT_GE(seq.fill_distance(n), 0.15);
}

TEST(SequenceProperty, FillDistanceNonIncreasing) {
  for (std::size_t d = 1; d <= 3; ++d) {
    const Domain box = Domain::unit_box(d, d == 1 ? 257 : (d == 2 ? 65 : 17));
    for (const auto& spec : {GeneratorSpec::uniform(d), GeneratorSpec::halton(),
                             GeneratorSpec::farthest_point()}) {
      const auto seq = generate(spec, box, 150);
      const auto& h = seq.fill_distances();
      for (std::size_t i = 1; i < h.size(); ++i) ASSERT_LE(h[i], h[i - 1]);
    }
  }
}

TEST(SequenceProperty, DeterministicGeneratorsDriveFillToZero) {
  for (std::size_t d = 1; d <= 3; ++d) {
    const Domain box = Domain::unit_box(d, d == 1 ? 4097 : (d == 2 ? 129 : 33));
    for (const auto& spec : {GeneratorSpec::halton(), GeneratorSpec::farthest_point()}) {
      const auto seq = generate(spec, box, 1024);
      EXPECT_LT(seq.fill_distance(1024), 0.5 * seq.fill_distance(64))
          << generator_name(spec.kind) << " d=" << d;
    }
  }
}

TEST(SequenceProperty, FarthestPointBeatsUniform) {
  const Domain box = Domain::unit_box(2, 65);
  const auto fps = generate(GeneratorSpec::farthest_point(), box, 64);
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto uni = generate(GeneratorSpec::uniform(seed), box, 64);
    const std::size_t n = 32 + seed % 33;
    if (fps.fill_distance(n) <= uni.fill_distance(n)) ++wins;
  }
  EXPECT_GE(wins, 95);
}

}  // namespace
}  // namespace kreg
