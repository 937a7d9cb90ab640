#pragma once

#include <iosfwd>
#include <vector>

#include "chebzero/chebyshev.hpp"
#include "chebzero/grid.hpp"

namespace chebzero {

/// Gamma_n(z) = sum_{j <= d_n} |u_j(z)|^2, accumulated as a running-maximum
/// log-sum-exp of 2 log|u_j(z)|. `value` is +inf when it overflows a double.
struct GammaValue {
  double value = 1.0;
  double log_value = 0.0;
};

GammaValue gamma(const Basis& basis, int n, const Point& z);

/// lambda(z) = (u_1(z), ..., u_{d_n}(z)) / sqrt(Gamma_n(z)).
std::vector<cplx> lambda_vector(const Basis& basis, int n, const Point& z);

/// (1/2n) log Gamma_n(z). Needs n >= 1.
double log_gamma_normalized(const Basis& basis, int n, const Point& z);

/// Samples of (1/2n) log Gamma_n against V_K on a uniform grid over a box.
struct BergmanField {
  int dimension = 1;
  int degree = 0;
  int resolution = 0;  // points per real axis, endpoints included
  Box box;
  std::vector<std::vector<double>> coordinates;
  std::vector<double> log_gamma;
  std::vector<double> normalized;
  std::vector<double> green;
  std::vector<double> abs_difference;
  /// Trapezoidal integral of |(1/2n) log Gamma_n - V_K| over the box.
  double l1_error = 0.0;
  /// l1_error divided by the box volume.
  double mean_abs_error = 0.0;
  /// max over the grid of (1/2n) log Gamma_n - V_K.
  double max_excess = 0.0;

  /// Columns x1,y1[,x2,y2],log_gamma,normalized,green,abs_diff.
  void write_csv(std::ostream& out) const;
};

/// Needs 1 <= n <= basis.max_degree(), K strictly inside `box`, and a
/// resolution of at least 64 (m = 1) or 20 (m = 2) points per real axis.
BergmanField bergman_field(const Basis& basis, int n, const Box& box, int resolution);

double l1loc_error(const Basis& basis, int n, const Box& box, int resolution);

}  // namespace chebzero
