#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebzero {

/// Broad failure categories. The command-line tool maps these onto exit codes.
enum class ErrorKind {
  kInvalidArgument,
  kOverflow,
  kDegenerateInput,
  kUnsupported,
  kNonConvergence,
  kRankDeficiency,
  kInsufficientData,
  kRootFailure,
  kSingularCell,
  kMissingArtifact,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown by Lawson iteration when max_iters is exhausted before the grid
/// maximum settles. Carries the last iterate so callers can still inspect it.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what,
                      std::vector<std::complex<double>> last_coefficients,
                      double last_residual, int iterations)
      : Error(ErrorKind::kNonConvergence, what),
        last_coefficients_(std::move(last_coefficients)),
        last_residual_(last_residual),
        iterations_(iterations) {}

  const std::vector<std::complex<double>>& last_coefficients() const {
    return last_coefficients_;
  }
  double last_residual() const noexcept { return last_residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  std::vector<std::complex<double>> last_coefficients_;
  double last_residual_;
  int iterations_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::kInvalidArgument, what);
}

}  // namespace chebzero
