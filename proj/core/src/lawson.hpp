#pragma once

// Lawson iteration kernels shared by chebyshev.cpp. Not installed.

#include <Eigen/Dense>
#include <vector>

#include "chebzero/chebyshev.hpp"

namespace chebzero::detail {

struct LawsonOutcome {
  std::vector<cplx> coefficients;  // frame coefficients, last == 1
  int iterations = 0;
  bool converged = false;
  std::vector<double> weighted_l2_history;  // in local (frame-monic) units
  std::vector<double> grid_max_history;
  std::vector<double> weights;  // final weights on the grid
};

/// Interval of local coordinate [-1, 1] sampled at the N-point
/// Chebyshev-Gauss-Lobatto grid (ascending). Histories are for the monic
/// polynomial in the local variable w. Coefficients are Chebyshev-T.
LawsonOutcome lawson_interval(int grid_size, int degree, const MinimaxOptions& options);

/// Unit circle of the local variable sampled at N equispaced angles.
/// Coefficients are in the power frame.
LawsonOutcome lawson_circle(int grid_size, int degree, const MinimaxOptions& options);

/// General weighted problem: minimise max_i |f_i + (A c)_i| over c. The
/// returned coefficients are (c, 1).
LawsonOutcome lawson_dense(const Eigen::MatrixXcd& lower, const Eigen::VectorXcd& leading,
                           const MinimaxOptions& options);

}  // namespace chebzero::detail
