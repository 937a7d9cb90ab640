#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

#include "chebzero/chebyshev.hpp"
#include "chebzero/series.hpp"

namespace chebzero {

/// F = <a, u> = sum_{l <= d_n} a_l u_l for a basis that outlives it.
class RandomPolynomial {
 public:
  RandomPolynomial(const Basis& basis, int n, std::vector<cplx> a);

  const Basis& basis() const noexcept { return series_.basis(); }
  int degree() const noexcept { return n_; }
  const std::vector<cplx>& coefficients() const noexcept { return series_.coefficients(); }
  const SeriesEvaluator& series() const noexcept { return series_; }

  cplx evaluate(const Point& z) const { return series_.value(z); }
  cplx evaluate(const Point& z, cplx& d1, cplx& d2) const { return series_.value(z, d1, d2); }

  /// log|F(z)| via log|<a, lambda(z)>| + (1/2) log Gamma_n(z); -inf at an
  /// exact zero.
  double log_abs(const Point& z) const;

 private:
  int n_;
  SeriesEvaluator series_;
};

struct Root {
  cplx z;
  int multiplicity = 1;
  double residual = 0.0;  // |F(z)| / sum_l |a_l u_l(z)|
};

struct RootSet {
  std::vector<Root> roots;
  int degree = 0;    // nominal n
  int n_actual = 0;  // roots counted with multiplicity
  bool degree_collapsed = false;
  int newton_steps = 0;

  /// Columns sample,re,im,multiplicity,residual.
  static void write_csv_header(std::ostream& out);
  void write_csv(std::ostream& out, std::size_t sample_id) const;
};

/// All roots of F (m = 1). The polynomial is re-expanded in the frame of the
/// set (exactly for frame-stored bases, by Chebyshev/Fourier interpolation at
/// 2(n+1) points for product-form bases), the colleague or companion matrix
/// is balanced and diagonalized, and each root gets up to 5 Newton steps
/// that are kept only while |F| decreases. Roots closer than 1e-8 merge
/// into one with multiplicity. Throws kRootFailure when a residual exceeds
/// 1e-6.
RootSet roots(const RandomPolynomial& f);

/// Expansion coefficients of F in the frame of the set (Chebyshev T in the
/// local variable for intervals, powers of z/r for circles and disks).
std::vector<cplx> frame_expansion(const RandomPolynomial& f);

struct Atom {
  cplx z;
  double mass = 0.0;
};

struct EmpiricalMeasure {
  std::vector<Atom> atoms;
  double total_mass = 0.0;
  bool deficient = false;  // total mass below 1 because of degree collapse
};

/// Mass multiplicity / n on each root.
EmpiricalMeasure empirical_measure(const RootSet& roots, int n);

}  // namespace chebzero
