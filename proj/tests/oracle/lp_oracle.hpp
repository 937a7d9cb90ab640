#pragma once

#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// min over c of max_i |f_i + sum_l phi_il c_l|, as a linear program: the
/// modulus is replaced by the polygon gauge max_k Re(e^{-i theta_k} w) over
/// `halfplanes` equispaced directions (2 is exact for real data with real
/// coefficients). Solved through its dual by a dense two-phase simplex.
struct LpResult {
  double value = 0.0;
  int iterations = 0;
};

LpResult lp_minimax(const std::vector<cplx>& f, const std::vector<std::vector<cplx>>& phi, int halfplanes,
                    bool real_coefficients);

/// Least deviation of monic degree-n polynomials on [a, b], sampled at
/// Chebyshev-Gauss-Lobatto points (count - 1 a multiple of n keeps the
/// extremal set on the grid).
double interval_minimax(double a, double b, int n, int count);

/// Same on the circle of radius r with 64 half-planes and 64 n equispaced
/// points.
double circle_minimax(double r, int n);

}  // namespace oracle
