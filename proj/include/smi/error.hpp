#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace smi {

// Bad input: malformed files, schema mismatches, invariant violations.
// Carries every problem found, not just the first.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  explicit ValidationError(std::string issue)
      : ValidationError(std::vector<std::string>{std::move(issue)}) {}

  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

// A column whose max equals its min cannot be min-max normalized.
class DegenerateColumnError : public ValidationError {
 public:
  explicit DegenerateColumnError(std::vector<std::string> indicators);
  const std::vector<std::string>& indicators() const noexcept { return indicators_; }

 private:
  std::vector<std::string> indicators_;
};

// Eigensolver non-convergence, zero total weight and similar numeric dead ends.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what,
                          double residual = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace smi
