#pragma once

#include <functional>
#include <nlohmann/json.hpp>
#include <string>

#include "chebzero/compactset.hpp"
#include "chebzero/test_function.hpp"
#include "chebzero/zeros.hpp"

namespace chebzero {

enum class PairingMethod { kAtomic, kPotential, kEquilibrium };
std::string to_string(PairingMethod method);

struct PairingResult {
  double value = 0.0;
  PairingMethod method = PairingMethod::kAtomic;
  double error_estimate = 0.0;
  int points_per_axis = 0;   // 0 for atomic pairings
  int subdivided_cells = 0;
  int nudges = 0;

  /// One JSON-lines record.
  nlohmann::json to_json() const;
};

/// (1/n) sum over roots with multiplicity of chi(root).
PairingResult pair_atomic(const RootSet& roots, int n, const TestFunction& chi);

/// Minimum points per real axis for potential-side quadrature.
int minimum_points_per_axis(int m);

/// Midpoint rule for integral g dd^c chi over the support box of chi, on
/// `points_per_axis` cells per real axis (even). Error estimate
/// |Q_h - Q_{2h}|. `g` is smooth here; no cell refinement.
PairingResult integrate_against_ddc(const std::function<double(const Point&)>& g,
                                    const TestFunction& chi, int points_per_axis);

/// (1/n) integral log|F| dd^c chi via Poincare-Lelong. Cells whose centre lies
/// within one cell width of a zero (Newton distance |F| / |grad F|) are split
/// 2 ways per real axis. An exact zero at a sub-cell centre is nudged by half
/// a sub-cell; a second hit throws kSingularCell. With `estimate_error`
/// false the coarse pass is skipped and error_estimate stays 0.
PairingResult pair_potential(const RandomPolynomial& f, int n, const TestFunction& chi,
                             int points_per_axis, bool estimate_error = true);

/// m = 1: chi integrated against the closed-form equilibrium density.
/// m = 2: integral V_K dd^c chi by the grid rule of pair_potential.
PairingResult pair_equilibrium(const ModelSet& set, const TestFunction& chi, int points_per_axis);

/// max(integral |dd^c chi|, |integral V_K dd^c chi|, sup |dd^c chi| vol(supp chi)).
double dphi_constant(const TestFunction& chi, const ModelSet& set, int points_per_axis);

}  // namespace chebzero
