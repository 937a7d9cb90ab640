#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "chebzero/types.hpp"

namespace chebzero {

enum class FactorKind { kInterval, kCircle, kDisk };
enum class SetKind { kInterval, kCircle, kDisk, kProduct };

/// One-variable model set: a real interval [a, b], or the circle/disk of a
/// given radius centred at the origin.
struct SetFactor {
  FactorKind kind = FactorKind::kCircle;
  double a = -1.0;
  double b = 1.0;
  double radius = 1.0;

  static SetFactor interval(double a, double b);
  static SetFactor circle(double radius = 1.0);
  static SetFactor disk(double radius = 1.0);

  friend bool operator==(const SetFactor&, const SetFactor&) = default;
};

/// Regular compact set K in C^m (m = 1 or 2) with a closed-form Green
/// function. Products are taken factor by factor.
class ModelSet {
 public:
  ModelSet() : ModelSet(SetFactor::circle()) {}
  explicit ModelSet(SetFactor factor);
  ModelSet(SetFactor first, SetFactor second);

  static ModelSet interval(double a = -1.0, double b = 1.0) {
    return ModelSet(SetFactor::interval(a, b));
  }
  static ModelSet unit_circle() { return ModelSet(SetFactor::circle()); }
  static ModelSet unit_disk() { return ModelSet(SetFactor::disk()); }
  static ModelSet product(SetFactor first, SetFactor second) {
    return ModelSet(first, second);
  }

  int dimension() const noexcept { return static_cast<int>(factors_.size()); }
  SetKind kind() const noexcept;
  const std::vector<SetFactor>& factors() const noexcept { return factors_; }
  const SetFactor& factor(int i) const { return factors_[static_cast<std::size_t>(i)]; }

  /// Short human-readable tag, e.g. "interval[-1,1]" or "disk(1)xdisk(1)".
  std::string describe() const;

  friend bool operator==(const ModelSet&, const ModelSet&) = default;

 private:
  std::vector<SetFactor> factors_;
};

/// V_K for one factor.
double green_value(const SetFactor& factor, cplx z);

/// V_K(z); for products the maximum of the coordinate Green functions.
double green_value(const ModelSet& set, const Point& z);

/// Points on the Shilov boundary: Chebyshev-Gauss-Lobatto nodes (ascending)
/// for intervals, equispaced angles starting at angle 0 for circles and disks.
/// Products give the tensor grid with `count` points per factor, first
/// coordinate varying slowest.
std::vector<Point> boundary_sample(const ModelSet& set, int count);
std::vector<cplx> boundary_sample(const SetFactor& factor, int count);

/// Random points of K itself (disks are filled, not just their boundary).
std::vector<Point> interior_sample(const ModelSet& set, int count, std::uint64_t seed);

/// Equilibrium measure dd^c V_K of a one-variable model set: the arcsine law
/// on an interval, normalized arclength on the boundary circle otherwise.
class EquilibriumDensity {
 public:
  explicit EquilibriumDensity(SetFactor factor);

  const SetFactor& factor() const noexcept { return factor_; }

  /// Density with respect to dx for intervals and d(theta) for circles.
  double density(double t) const;

  /// Measure of [lo, hi] (intervals) or of the arc [lo, hi] in angle (circles).
  double mass(double lo, double hi) const;

  /// Integral of f against the measure using `nodes` quadrature points
  /// (Gauss-Chebyshev for intervals, trapezoidal in angle for circles).
  double integrate(const std::function<double(cplx)>& f, int nodes) const;

 private:
  SetFactor factor_;
};

/// Throws ErrorKind::kUnsupported for m = 2 sets.
EquilibriumDensity equilibrium_density(const ModelSet& set);

}  // namespace chebzero
