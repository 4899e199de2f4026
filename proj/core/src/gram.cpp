#include "kreg/gram.hpp"

#include "kreg/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <cmath>
#include <vector>

namespace kreg {

JitterPolicy parse_jitter(std::string_view text) {
  if (text == "none") return JitterPolicy::none();
  if (text == "auto") return JitterPolicy::automatic();
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value) ||
      value < 0.0) {
    throw ConfigError("jitter must be \"none\", \"auto\" or a non-negative number, got \"" +
                      std::string(text) + "\"");
  }
  return value == 0.0 ? JitterPolicy::none() : JitterPolicy::fixed(value);
}

std::string to_string(const JitterPolicy& policy) {
  switch (policy.mode) {
    case JitterPolicy::Mode::None: return "none";
    case JitterPolicy::Mode::Auto: return "auto";
    case JitterPolicy::Mode::Fixed: {
      std::array<char, 32> buf{};
      auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), policy.lambda);
      return {buf.data(), end};
    }
  }
  return "none";
}

GramMatrix::GramMatrix(Matrix entries, PointSet centers)
    : entries_(std::move(entries)), centers_(std::move(centers)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() != centers_.rows()) {
    throw DimensionMismatch("Gram matrix shape does not match its centers");
  }
}

Matrix GramMatrix::lower_factor() const {
  if (!factor_) throw Error("Gram matrix has not been factorized");
  return factor_->matrixL();
}

Vector GramMatrix::solve(const Vector& rhs) const {
  if (!factor_) throw Error("Gram matrix has not been factorized");
  if (rhs.size() != size()) throw DimensionMismatch("right-hand side length mismatch");
  return factor_->solve(rhs);
}

double GramMatrix::condition_estimate() const {
  if (!factor_) throw Error("Gram matrix has not been factorized");
  const Eigen::Index n = size();
  if (n == 0) return 1.0;
  if (n == 1) return 1.0;

  // Deterministic start vector, not orthogonal to the leading eigenvector of
  // a matrix with positive entries on the diagonal.
  Vector start(n);
  for (Eigen::Index i = 0; i < n; ++i) start[i] = 1.0 + 0.1 * static_cast<double>(i % 7);
  constexpr int kIterations = 60;

  const Matrix shifted = entries_ + jitter_ * Matrix::Identity(n, n);
  Vector v = start.normalized();
  double largest = 0.0;
  for (int it = 0; it < kIterations; ++it) {
    Vector w = shifted * v;
    largest = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) break;
    v = w / norm;
  }

  v = start.normalized();
  double inverse_largest = 0.0;
  for (int it = 0; it < kIterations; ++it) {
    Vector w = factor_->solve(v);
    inverse_largest = v.dot(w);
    const double norm = w.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) break;
    v = w / norm;
  }
  if (!(inverse_largest > 0.0)) return std::numeric_limits<double>::infinity();
  return largest * inverse_largest;
}

GramMatrix assemble_gram(const Kernel& kernel, const PointSet& centers, const Execution& exec) {
  check_distinct(centers);
  const Eigen::Index n = centers.rows();
  Matrix entries(n, n);
  parallel_for(static_cast<std::size_t>(n), exec, [&](std::size_t begin, std::size_t end) {
    for (auto j = static_cast<Eigen::Index>(begin); j < static_cast<Eigen::Index>(end); ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        // Column j is written by one worker only; K(x_j, x_k) = K(x_k, x_j)
        // because both go through the same distance computation.
        entries(k, j) = kernel.eval(row(centers, k), row(centers, j));
      }
    }
  });
  return GramMatrix(std::move(entries), centers);
}

GramMatrix factorize(GramMatrix gram, const JitterPolicy& policy) {
  const Eigen::Index n = gram.size();
  const double diag_max = n > 0 ? gram.entries_.diagonal().maxCoeff() : 1.0;

  std::vector<double> ladder;
  switch (policy.mode) {
    case JitterPolicy::Mode::None: ladder = {0.0}; break;
    case JitterPolicy::Mode::Fixed: ladder = {policy.lambda}; break;
    case JitterPolicy::Mode::Auto:
      ladder = {0.0, 1e-12 * diag_max, 1e-10 * diag_max, 1e-8 * diag_max};
      break;
  }

  for (double lambda : ladder) {
    Matrix shifted = gram.entries_;
    shifted.diagonal().array() += lambda;
    Eigen::LLT<Matrix> llt(shifted);
    if (llt.info() == Eigen::Success) {
      gram.factor_ = std::move(llt);
      gram.jitter_ = lambda;
      return gram;
    }
  }
  throw NotPositiveDefinite(static_cast<std::size_t>(n), ladder.back());
}

}  // namespace kreg
