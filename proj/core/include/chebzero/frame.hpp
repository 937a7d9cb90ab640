#pragma once

#include <vector>

#include "chebzero/compactset.hpp"
#include "chebzero/multiindex.hpp"
#include "chebzero/types.hpp"

namespace chebzero {

/// Well-conditioned polynomial frame attached to one factor of a model set:
/// Chebyshev polynomials T_k((z - c)/h) on intervals, powers (z/r)^k on
/// circles and disks. Frame polynomials are what bases are stored in.
class AxisFrame {
 public:
  enum class Kind { kChebyshev, kPower };

  explicit AxisFrame(const SetFactor& factor);

  Kind kind() const noexcept { return kind_; }

  /// Local coordinate w(z): (z - c)/h or z/r.
  cplx local(cplx z) const { return (z - center_) / scale_; }
  cplx global(cplx w) const { return center_ + scale_ * w; }
  double scale() const noexcept { return scale_; }
  double center() const noexcept { return center_; }

  /// Phi_0..Phi_n at z. `derivs`, when non-null, receives d Phi_k / dz.
  void values(cplx z, int n, cplx* vals, cplx* derivs = nullptr) const;

  /// log of the coefficient of z^k in Phi_k.
  double log_leading(int k) const;

 private:
  Kind kind_;
  double center_;
  double scale_;
};

/// Tensor-product frame Phi_k(z) = prod_i Phi^{(i)}_{k_i}(z_i) of a model set.
class SetFrame {
 public:
  explicit SetFrame(const ModelSet& set);

  int dimension() const noexcept { return static_cast<int>(axes_.size()); }
  const AxisFrame& axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }

  /// Phi_{k(l)}(z) for l < count, in table order.
  void values(const MultiIndexTable& table, std::size_t count, const Point& z,
              std::vector<cplx>& out) const;

  /// Same, plus the two partial derivatives d/dz_1 and d/dz_2 (the second is
  /// zero for m = 1).
  void values_with_gradient(const MultiIndexTable& table, std::size_t count,
                            const Point& z, std::vector<cplx>& out,
                            std::vector<cplx>& d1, std::vector<cplx>& d2) const;

  /// log of the coefficient of z^k in Phi_k.
  double log_leading(const MultiIndex& k) const;

 private:
  std::vector<AxisFrame> axes_;
};

}  // namespace chebzero
