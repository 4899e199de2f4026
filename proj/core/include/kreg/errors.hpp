#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kreg {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DuplicatePoints : public Error {
 public:
  DuplicatePoints(std::size_t first, std::size_t second, double distance);

  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

// Cholesky factorization failed under the requested jitter policy.
class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(std::size_t order, double largest_jitter_tried);

  std::size_t order() const { return order_; }
  double largest_jitter_tried() const { return jitter_; }

 private:
  std::size_t order_;
  double jitter_;
};

class InterpolationToleranceExceeded : public Error {
 public:
  InterpolationToleranceExceeded(double residual, double tolerance);

  double residual() const { return residual_; }
  double tolerance() const { return tolerance_; }

 private:
  double residual_;
  double tolerance_;
};

class KernelMismatch : public Error {
 public:
  using Error::Error;
};

// Every sampled kernel increment vanished; no Hölder exponent can be fitted.
class DegenerateKernel : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

}  // namespace kreg
