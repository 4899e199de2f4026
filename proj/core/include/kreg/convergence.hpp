#pragma once

#include "kreg/experiment_config.hpp"
#include "kreg/interpolant.hpp"
#include "kreg/parallel.hpp"
#include "kreg/sequence.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kreg {

struct ConvergenceRecord {
  std::size_t n = 0;
  double h_n = 0.0;           // fill distance of X_n
  double eta_n = 0.0;         // |s_n - f|_K
  double sup_err = 0.0;       // max over the grid of |s_n - f|
  double bound_k = 0.0;       // eta_n * sqrt(phi(0))
  double bound_holder = 0.0;  // sqrt(2 C h_n^alpha) |f|_K
  double cond_est = 0.0;
  double jitter = 0.0;

  bool operator==(const ConvergenceRecord&) const = default;
};

struct ConvergenceRun {
  std::vector<ConvergenceRecord> records;
  KernelCombination target;
  double target_norm = 0.0;
  PointSequence sequence;
  double holder_alpha = 1.0;
  double holder_constant = 0.0;
  ResolvedSeeds seeds;
  // Set when a fit failed; records hold everything before the failing n.
  std::optional<std::size_t> failed_n;
  std::string failure;

  bool complete() const { return !failed_n.has_value(); }
};

// Fits s_n on every prefix X_n of the schedule and records errors and bounds.
// Deterministic in config.seed; the thread count does not change any bit.
// Solver failures stop the run and are reported in failed_n / failure.
ConvergenceRun run_convergence(const ExperimentConfig& config, const Execution& exec = {});

// pass[i] iff sup_err <= sqrt(2 C h^alpha) * f_norm * (1 + 1e-10).
std::vector<bool> check_holder_bound(std::span<const ConvergenceRecord> records, double constant,
                                     double alpha, double f_norm);

struct CounterexampleReport {
  ConvergenceRun avoiding;
  ConvergenceRun control;
  double expected_eta = 0.0;           // |f|_K
  bool samples_vanish = false;         // f(x) == 0 at every avoiding sample
  bool interpolants_vanish = false;    // every avoiding fit has c == 0
  double max_eta_deviation = 0.0;      // max_n |eta_n - |f|_K| on the avoiding run
  double min_avoiding_fill = 0.0;      // min_n h_n on the avoiding run
  double control_decay = 0.0;          // eta_control(first) / eta_control(last)
};

// Runs the avoiding configuration and a control run without the ball.
// Throws ConfigError unless the kernel is Wendland31, an avoided ball is set,
// and every target translate has its support inside the ball.
CounterexampleReport counterexample_report(const ExperimentConfig& config,
                                           const Execution& exec = {});

}  // namespace kreg
