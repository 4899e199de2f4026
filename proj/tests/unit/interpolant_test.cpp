#include "kreg/errors.hpp"
#include "kreg/holder.hpp"
#include "kreg/interpolant.hpp"
#include "kreg/sequence.hpp"
#include "instances.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace kreg {
namespace {

using testing::points1d;
using testing::vec;

Interpolant fit_to(const KernelCombination& target, const PointSet& x,
                   JitterPolicy jitter = JitterPolicy::none()) {
  return fit(target.kernel(), x, target.evaluate(x), FitOptions{jitter, false, {}});
}

TEST(Fit, SinglePoint) {
  const auto s = fit(Kernel::gaussian(1.0), points1d({0.3}), vec({2.5}));
  EXPECT_EQ(s.coefficients()[0], 2.5);
}

TEST(Fit, TwoPointClosedForm) {
  const double v = std::exp(-0.25);
  const auto s = fit(Kernel::gaussian(1.0), points1d({0.0, 1.0}), vec({v, v}));
  const double c = v / (1.0 + std::exp(-1.0));
  EXPECT_NEAR(s.coefficients()[0], c, 1e-15);
  EXPECT_NEAR(s.coefficients()[1], c, 1e-15);
}

TEST(Fit, ZeroValuesGiveZeroInterpolant) {
  const auto s = fit(Kernel::wendland31(0.5), points1d({0.0, 0.2, 0.7}), Vector::Zero(3));
  EXPECT_TRUE((s.coefficients().array() == 0.0).all());
}

TEST(Fit, ErrorsPropagate) {
  EXPECT_THROW(fit(Kernel::gaussian(1.0), points1d({0.0, 1.0}), vec({1.0})), DimensionMismatch);
  EXPECT_THROW(fit(Kernel::gaussian(1.0), points1d({0.0, 0.0}), vec({1.0, 1.0})), DuplicatePoints);
  PointSet x(50, 1);
  for (Eigen::Index i = 0; i < 50; ++i) x(i, 0) = 1e-6 * static_cast<double>(i);
  EXPECT_THROW(fit(Kernel::gaussian(1.0), x, Vector::Ones(50)), NotPositiveDefinite);
}

TEST(Fit, ReproducesSamplesAtCenters) {
  Rng rng(12);
  const PointSet x = testing::separated_points(30, 2, 0.05, 12);
  const Vector v = testing::random_vector(30, -3.0, 3.0, rng);
  const auto s = fit(Kernel::inverse_multiquadric(5.0), x, v);
  EXPECT_LE((s.evaluate(x) - v).cwiseAbs().maxCoeff(), 1e-8 * (1.0 + v.cwiseAbs().maxCoeff()));
  EXPECT_LE(s.max_residual(), 1e-8);
}

TEST(Eta, TargetInSubspaceIsZero) {
  const Kernel k = Kernel::gaussian(3.0);
  const PointSet x = points1d({0.0, 0.4, 0.8});
  const auto target = KernelCombination::translate(k, vec({0.4}));
  const auto s = fit_to(target, x);
  EXPECT_LE(regression_error_rkhs(target, s), 1e-7);
  EXPECT_LE(sup_error(target, s, Domain::unit_box(1, 101)).value, 1e-8);
}

TEST(Eta, TargetAwayFromSamplesKeepsFullNorm) {
  const Kernel k = Kernel::wendland31(0.1);
  const auto target = KernelCombination::translate(k, vec({0.5}));
  const auto s = fit_to(target, points1d({0.1, 0.2, 0.8, 0.95}));
  EXPECT_TRUE((s.coefficients().array() == 0.0).all());
  EXPECT_EQ(regression_error_rkhs(target, s), rkhs_norm(target));
}

TEST(Eta, TwoPointClosedForm) {
  const Kernel k = Kernel::gaussian(1.0);
  const auto target = KernelCombination::translate(k, vec({0.5}));
  const auto s = fit_to(target, points1d({0.0, 1.0}));
  const double eta2 = 1.0 - 2.0 * std::exp(-0.5) / (1.0 + std::exp(-1.0));
  EXPECT_NEAR(regression_error_rkhs(target, s), std::sqrt(eta2), 1e-10 * std::sqrt(eta2));
}

TEST(SupError, ZeroTarget) {
  const KernelCombination zero(Kernel::gaussian(1.0), points1d({0.5}), vec({0.0}));
  const auto s = fit_to(zero, points1d({0.1, 0.9}));
  EXPECT_EQ(sup_error(zero, s, Domain::unit_box(1, 51)).value, 0.0);
}

TEST(UniformBound, Examples) {
  const Domain box = Domain::unit_box(1, 11);
  EXPECT_EQ(uniform_bound(0.0, Kernel::gaussian(1.0), box), 0.0);
  EXPECT_EQ(uniform_bound(0.3, Kernel::gaussian(1.0), box), 0.3);
  EXPECT_EQ(uniform_bound(0.3, Kernel::wendland31(0.2), box), 0.3);
}

using testing::Instance;
using testing::make_instance;

TEST(RkhsProperty, PythagorasAndNormMinimality) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = make_instance(seed);
    const auto s = fit_to(inst.target, inst.x);
    const double f2 = rkhs_inner(inst.target, inst.target);
    const double s_norm = rkhs_norm(s.combination());
    const double eta = regression_error_rkhs(inst.target, s);
    ASSERT_LE(std::abs(f2 - eta * eta - s_norm * s_norm), 1e-6 * f2) << seed;
    ASSERT_LE(s_norm, std::sqrt(f2) * (1.0 + 1e-10)) << seed;
    ASSERT_LE(eta, std::sqrt(f2) * (1.0 + 1e-10)) << seed;
  }
}

TEST(RkhsProperty, ResidualOrthogonalToEveryCenter) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = make_instance(seed);
    const auto s = fit_to(inst.target, inst.x);
    const auto residual = difference(s.combination(), inst.target);
    for (Eigen::Index k = 0; k < inst.x.rows(); ++k) {
      const Vector xk = inst.x.row(k).transpose();
      const double via_inner =
          rkhs_inner(residual, KernelCombination::translate(inst.target.kernel(), xk));
      const double pointwise = residual.value_at(row(inst.x, k));
      ASSERT_LE(std::abs(via_inner), 1e-8) << seed;
      ASSERT_LE(std::abs(pointwise), 1e-8) << seed;
      ASSERT_LE(std::abs(via_inner - pointwise), 1e-8) << seed;
    }
  }
}

TEST(RkhsProperty, InterpolantIsBestApproximation) {
  const auto inst = make_instance(4);
  const auto s = fit_to(inst.target, inst.x);
  const double eta = regression_error_rkhs(inst.target, s);
  const Vector& c = s.coefficients();
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    Vector delta(c.size());
    for (auto& e : delta) e = rng.normal();
    delta *= 1e-3 * c.norm() / delta.norm();
    const KernelCombination perturbed(inst.target.kernel(), inst.x, c + delta);
    ASSERT_GT(rkhs_norm(difference(perturbed, inst.target)), eta) << trial;
  }
}

TEST(RkhsProperty, NestedSetsNeverIncreaseError) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = make_instance(seed * 3 + 1);
    const auto seq = generate(GeneratorSpec::halton(), inst.domain, 40);
    double previous = rkhs_norm(inst.target);
    for (std::size_t n = 1; n <= 40; ++n) {
      const auto s = fit_to(inst.target, seq.prefix(n), JitterPolicy::automatic());
      const double eta = regression_error_rkhs(inst.target, s);
      ASSERT_LE(eta, previous + 1e-10) << seed << " n=" << n;
      previous = eta;
    }
  }
}

TEST(RkhsProperty, SupErrorBelowUniformBound) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = make_instance(seed);
    const auto s = fit_to(inst.target, inst.x);
    const double eta = regression_error_rkhs(inst.target, s);
    const double sup = sup_error(inst.target, s, inst.domain).value;
    ASSERT_LE(sup, uniform_bound(eta, inst.target.kernel(), inst.domain) * (1.0 + 1e-10) + 1e-12);
  }
}

TEST(RkhsProperty, LocalHolderContinuityOfKernelFunctions) {
  for (double a : {0.5, 1.0}) {
    const Kernel k = Kernel::generalized_exponential(a);
    const Domain box = Domain::unit_box(2, 41);
    const auto est = estimate_holder(k, box, 4000, 5);
    Rng rng(6);
    const PointSet y = testing::separated_points(6, 2, 1e-2, 9);
    const KernelCombination target(k, y, testing::random_vector(6, -1.0, 1.0, rng));
    const auto s = fit_to(target, testing::separated_points(20, 2, 0.05, 10));
    for (const KernelCombination* f : {&target, &s.combination()}) {
      const double norm2 = rkhs_inner(*f, *f);
      for (int trial = 0; trial < 1000; ++trial) {
        const Vector x = vec({rng.uniform(), rng.uniform()});
        const double t = est.radius * rng.uniform();
        const double angle = 2.0 * M_PI * rng.uniform();
        const Vector z = x + t * vec({std::cos(angle), std::sin(angle)});
        const double diff = f->value_at(view(x)) - f->value_at(view(z));
        const double dist = distance(view(x), view(z));
        ASSERT_LE(diff * diff, 1.1 * 2.0 * est.constant * std::pow(dist, est.alpha) * norm2)
            << "a=" << a;
      }
    }
  }
}

TEST(InterpolantJson, RoundTripPreservesEvaluations) {
  const auto inst = make_instance(7);
  const auto s = fit_to(inst.target, inst.x);
  const auto doc = nlohmann::json::parse(interpolant_to_json(s).dump());
  const auto loaded = interpolant_from_json(doc);
  const PointSet probes = testing::separated_points(200, inst.x.cols(), 0.0, 3);
  const Vector a = s.evaluate(probes);
  const Vector b = loaded.combination.evaluate(probes);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    ASSERT_LE(std::abs(a[i] - b[i]), 1e-15 * std::max(1.0, std::abs(a[i])));
  }
  EXPECT_EQ(loaded.jitter, s.jitter());
}

TEST(InterpolantJson, RejectsMalformed) {
  EXPECT_THROW(interpolant_from_json(nlohmann::json::parse(R"({"centers":[[0]]})")), ConfigError);
  EXPECT_THROW(interpolant_from_json(nlohmann::json::parse(
                   R"({"kernel":{"family":"gaussian","shape":1},"centers":[[0],[1]],"coefficients":[1]})")),
               Error);
}

TEST(SupErrorParallel, ThreadCountIrrelevant) {
  const auto inst = make_instance(11);
  const auto s = fit_to(inst.target, inst.x);
  EXPECT_EQ(sup_error(inst.target, s, inst.domain, Execution{1}).value,
            sup_error(inst.target, s, inst.domain, Execution{4}).value);
}

}  // namespace
}  // namespace kreg
