#include "kreg/convergence.hpp"

#include "kreg/errors.hpp"
#include "kreg/holder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kreg {

namespace {

PointSequence build_sequence(const ExperimentConfig& config, const ResolvedSeeds& seeds,
                             std::size_t n, const Execution& exec) {
  GeneratorSpec spec;
  spec.kind = config.generator;
  spec.seed = seeds.sequence;
  spec.explicit_points = config.explicit_points;
  if (config.avoid_ball) return avoid_ball_generate(spec, config.domain, n, *config.avoid_ball, exec);
  return generate(spec, config.domain, n, exec);
}

}  // namespace

ConvergenceRun run_convergence(const ExperimentConfig& config, const Execution& exec) {
  if (config.n_schedule.empty()) throw ConfigError("empty n_schedule");
  if (!std::is_sorted(config.n_schedule.begin(), config.n_schedule.end()) ||
      std::adjacent_find(config.n_schedule.begin(), config.n_schedule.end()) !=
          config.n_schedule.end()) {
    throw ConfigError("n_schedule must be strictly increasing");
  }

  const ResolvedSeeds seeds = resolve_seeds(config.seed);
  KernelCombination target = build_target(config, seeds);
  for (Eigen::Index k = 0; k < target.centers().rows(); ++k) {
    if (!config.domain.contains(row(target.centers(), k))) {
      throw ConfigError("target center lies outside the domain");
    }
  }
  PointSequence sequence = build_sequence(config, seeds, config.n_schedule.back(), exec);

  double alpha = config.holder.alpha;
  double constant = config.holder.constant;
  if (config.holder.source == HolderSource::Estimated) {
    const HolderEstimate estimate =
        estimate_holder(config.kernel, config.domain, config.holder.pairs, seeds.holder);
    alpha = estimate.alpha;
    constant = estimate.constant;
  }

  const double target_norm = rkhs_norm(target);
  const FitOptions options{config.jitter, config.refine, exec};

  ConvergenceRun run{{}, target, target_norm, sequence, alpha, constant, seeds, std::nullopt, {}};
  run.records.reserve(config.n_schedule.size());
  for (std::size_t n : config.n_schedule) {
    const PointSet points = sequence.prefix(n);
    try {
      const Vector samples = target.evaluate(points, exec);
      const Interpolant interpolant = fit(config.kernel, points, samples, options);
      ConvergenceRecord record;
      record.n = n;
      record.h_n = sequence.fill_distance(n);
      record.eta_n = regression_error_rkhs(target, interpolant);
      record.sup_err = sup_error(target, interpolant, config.domain, exec).value;
      record.bound_k = uniform_bound(record.eta_n, config.kernel, config.domain);
      record.bound_holder = std::sqrt(2.0 * constant * std::pow(record.h_n, alpha)) * target_norm;
      record.cond_est = interpolant.gram().condition_estimate();
      record.jitter = interpolant.jitter();
      run.records.push_back(record);
    } catch (const NotPositiveDefinite& e) {
      run.failed_n = n;
      run.failure = e.what();
      break;
    } catch (const InterpolationToleranceExceeded& e) {
      run.failed_n = n;
      run.failure = e.what();
      break;
    }
  }
  return run;
}

std::vector<bool> check_holder_bound(std::span<const ConvergenceRecord> records, double constant,
                                     double alpha, double f_norm) {
  if (!(constant > 0.0)) throw ConfigError("Hölder constant must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("Hölder exponent must lie in (0, 1]");
  std::vector<bool> pass;
  pass.reserve(records.size());
  for (const auto& record : records) {
    const double bound = std::sqrt(2.0 * constant * std::pow(record.h_n, alpha)) * f_norm;
    pass.push_back(record.sup_err <= bound * (1.0 + 1e-10));
  }
  return pass;
}

CounterexampleReport counterexample_report(const ExperimentConfig& config, const Execution& exec) {
  if (config.kernel.family() != KernelFamily::Wendland31) {
    throw ConfigError("the counterexample needs a compactly supported (wendland31) kernel");
  }
  if (!config.avoid_ball) throw ConfigError("the counterexample needs sequence.avoid_ball");
  const AvoidBall& ball = *config.avoid_ball;
  const double support = config.kernel.shape();
  if (support > ball.radius) {
    throw ConfigError("kernel support radius " + std::to_string(support) +
                      " exceeds the avoided ball radius " + std::to_string(ball.radius));
  }

  ConvergenceRun avoiding = run_convergence(config, exec);
  const KernelCombination& target = avoiding.target;
  for (Eigen::Index k = 0; k < target.centers().rows(); ++k) {
    if (distance(row(target.centers(), k), view(ball.center)) + support > ball.radius) {
      throw ConfigError("target translate " + std::to_string(k) +
                        " is not supported inside the avoided ball");
    }
  }

  ExperimentConfig control_config = config;
  control_config.avoid_ball.reset();
  ConvergenceRun control = run_convergence(control_config, exec);

  CounterexampleReport report{std::move(avoiding), std::move(control)};
  const ConvergenceRun& run = report.avoiding;
  report.expected_eta = run.target_norm;

  const std::size_t largest = run.records.empty() ? 0 : run.records.back().n;
  if (largest > 0) {
    const Vector samples = target.evaluate(run.sequence.prefix(largest), exec);
    report.samples_vanish = (samples.array() == 0.0).all();
  }
  report.interpolants_vanish = report.samples_vanish && run.complete();
  if (report.samples_vanish) {
    // Zero right-hand side against a factorized SPD matrix solves to exactly zero.
    for (std::size_t n : config.n_schedule) {
      const PointSet points = run.sequence.prefix(n);
      const Interpolant s = fit(config.kernel, points, Vector::Zero(static_cast<Eigen::Index>(n)),
                                {config.jitter, config.refine, exec});
      report.interpolants_vanish = report.interpolants_vanish && (s.coefficients().array() == 0.0).all();
    }
  }

  report.min_avoiding_fill = std::numeric_limits<double>::infinity();
  for (const auto& record : run.records) {
    report.max_eta_deviation =
        std::max(report.max_eta_deviation, std::abs(record.eta_n - report.expected_eta));
    report.min_avoiding_fill = std::min(report.min_avoiding_fill, record.h_n);
  }
  const auto& control_records = report.control.records;
  if (control_records.size() >= 2 && control_records.back().eta_n > 0.0) {
    report.control_decay = control_records.front().eta_n / control_records.back().eta_n;
  } else if (control_records.size() >= 2) {
    report.control_decay = std::numeric_limits<double>::infinity();
  }
  return report;
}

}  // namespace kreg
