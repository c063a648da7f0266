#pragma once

#include <stdexcept>
#include <string>

namespace mxm {

/// Two fields (or a field and a mask) were built on different grids.
class GridMismatch : public std::invalid_argument {
 public:
  explicit GridMismatch(const std::string& what)
      : std::invalid_argument("grid mismatch: " + what) {}
};

/// An iterative solve stopped before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// NaN/Inf detected, or a fixed-point iteration failed to contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad scenario configuration. `key()` names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace mxm
