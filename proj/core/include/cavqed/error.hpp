#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cavqed {

struct Issue {
  std::string path;     // e.g. "levels[1].energy"
  std::string message;  // e.g. "energy must be positive"
};

/// Input rejected by validation. Carries every violated invariant.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<Issue> issues);
  ValidationError(std::string path, std::string message);

  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  std::vector<Issue> issues_;
};

/// Numerical failure inside a solver (bracketing, singular solve, pole hit).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PoleError : public SolverError {
 public:
  PoleError(double z, std::size_t mode);
  double frequency() const noexcept { return z_; }
  std::size_t mode() const noexcept { return mode_; }

 private:
  double z_;
  std::size_t mode_;
};

}  // namespace cavqed
