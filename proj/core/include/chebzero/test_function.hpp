#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "chebzero/grid.hpp"
#include "chebzero/types.hpp"

namespace chebzero {

/// Smooth compactly supported real function chi on C^m, given as a finite
/// linear combination of closed-form profiles.
///
///   bump:    A (1 - r^2/R^2)^4 for r < R, r = |z - c| in R^{2m}
///   plateau: A on r <= R0, then A (1 - S(t)), t = (r - R0)/(R1 - R0), with
///            S(t) = 35t^4 - 84t^5 + 70t^6 - 20t^7 (C^3 at both ends)
///   slab:    A W_1(x_1) W_2(x_2) ... over the real coordinates, each W a
///            one-dimensional plateau window [a, b] tapered to [a - ta, b + tb]
///            (m = 1 only)
///
/// All profiles and their Laplacians vanish identically outside the support.
class TestFunction {
 public:
  struct Window {
    double a = 0.0, b = 0.0;          // plateau
    double taper_lo = 0.0, taper_hi = 0.0;
  };
  struct Term {
    enum class Kind { kBump, kPlateau, kSlab } kind = Kind::kBump;
    double amplitude = 1.0;
    std::vector<double> center;  // real coordinates, length 2m
    double inner = 0.0;          // R0 (plateau)
    double outer = 1.0;          // R (bump) or R1 (plateau)
    Window x, y;                 // slab
  };

  static TestFunction bump(const Point& center, double radius, double amplitude, int m);
  static TestFunction plateau(const Point& center, double inner, double outer, double amplitude,
                              int m);
  static TestFunction slab(Window x, Window y, double amplitude);

  int dimension() const noexcept { return m_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  double value(const Point& z) const;
  /// Euclidean Laplacian in R^{2m}.
  double laplacian(const Point& z) const;
  /// L[chi]: the density of dd^c chi (m = 1) or dd^c chi ^ beta (m = 2)
  /// against Lebesgue measure, Laplacian / 2 pi and Laplacian / pi^2.
  double dd_c(const Point& z) const;

  Box support_box() const;
  /// Sum of the support volumes of the terms (exact for a single term).
  double support_volume() const;

  TestFunction scaled(double c) const;
  friend TestFunction operator+(const TestFunction& a, const TestFunction& b);

  nlohmann::json to_json() const;
  static TestFunction from_json(const nlohmann::json& config, int m);

 private:
  int m_ = 1;
  std::vector<Term> terms_;
};

}  // namespace chebzero
