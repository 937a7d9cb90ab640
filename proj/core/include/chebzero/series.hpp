#pragma once

#include <span>
#include <vector>

#include "chebzero/chebyshev.hpp"

namespace chebzero {

/// F = sum_{l < count} a_l u_l for a fixed basis, prepared for repeated
/// evaluation. Frame bases fold the coefficients into one frame expansion
/// b_k = sum_j a_j exp(lognorm_j) c^{(j)}_k; product-form (Leja) bases use
/// nested Newton-Horner evaluation.
///
/// Holds a reference to `basis`, which must outlive the evaluator.
class SeriesEvaluator {
 public:
  SeriesEvaluator(const Basis& basis, std::span<const cplx> a);

  const Basis& basis() const noexcept { return *basis_; }
  std::size_t size() const noexcept { return a_.size(); }
  const std::vector<cplx>& coefficients() const noexcept { return a_; }

  /// Frame coefficients b (empty for product-form bases).
  const std::vector<cplx>& frame_coefficients() const noexcept { return b_; }

  cplx value(const Point& z) const;

  /// F(z) together with dF/dz_1 and dF/dz_2 (zero for m = 1).
  cplx value(const Point& z, cplx& d1, cplx& d2) const;

  /// sum_l |a_l u_l(z)|: the scale against which root residuals are judged.
  double magnitude(const Point& z) const;

 private:
  const Basis* basis_;
  std::vector<cplx> a_;
  std::vector<cplx> b_;       // frame representation
  std::vector<cplx> nested_;  // product representation: a_j / M_j
};

}  // namespace chebzero
