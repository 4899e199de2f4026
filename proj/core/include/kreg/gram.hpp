#pragma once

#include "kreg/kernel.hpp"
#include "kreg/parallel.hpp"
#include "kreg/types.hpp"

#include <Eigen/Cholesky>

#include <optional>
#include <string>
#include <string_view>

namespace kreg {

// How much diagonal regularization factorize() may add.
//   None   plain Cholesky; fails loudly.
//   Fixed  adds exactly `lambda`.
//   Auto   first success among {0, 1e-12, 1e-10, 1e-8} * phi(0).
struct JitterPolicy {
  enum class Mode { None, Fixed, Auto };

  Mode mode = Mode::None;
  double lambda = 0.0;

  static JitterPolicy none() { return {}; }
  static JitterPolicy fixed(double lambda) { return {Mode::Fixed, lambda}; }
  static JitterPolicy automatic() { return {Mode::Auto, 0.0}; }

  bool operator==(const JitterPolicy&) const = default;
};

// Accepts "none", "auto" or a non-negative number.
JitterPolicy parse_jitter(std::string_view text);
std::string to_string(const JitterPolicy& policy);

class GramMatrix {
 public:
  GramMatrix(Matrix entries, PointSet centers);

  const Matrix& entries() const { return entries_; }
  const PointSet& centers() const { return centers_; }
  Eigen::Index size() const { return entries_.rows(); }

  bool factorized() const { return factor_.has_value(); }
  // Lower-triangular L with L L^T = entries + jitter * I. Requires factorized().
  Matrix lower_factor() const;
  double jitter() const { return jitter_; }

  // Solves (entries + jitter I) x = rhs with the stored factor.
  Vector solve(const Vector& rhs) const;

  // Ratio of extreme eigenvalue estimates of entries + jitter I, from power
  // and inverse power iteration. Requires factorized().
  double condition_estimate() const;

 private:
  friend GramMatrix factorize(GramMatrix gram, const JitterPolicy& policy);

  Matrix entries_;
  PointSet centers_;
  std::optional<Eigen::LLT<Matrix>> factor_;
  double jitter_ = 0.0;
};

// Symmetric matrix (K(x_j, x_k)). Throws DuplicatePoints.
GramMatrix assemble_gram(const Kernel& kernel, const PointSet& centers,
                         const Execution& exec = {});

// Throws NotPositiveDefinite if no admissible jitter lets Cholesky succeed.
GramMatrix factorize(GramMatrix gram, const JitterPolicy& policy);

}  // namespace kreg
