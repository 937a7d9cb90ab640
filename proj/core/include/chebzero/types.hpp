#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace chebzero {

using cplx = std::complex<double>;

/// Point of C^m for m <= 2. Coordinates past the set's dimension are ignored
/// and conventionally zero.
struct Point {
  std::array<cplx, 2> z{};

  Point() = default;
  explicit Point(cplx z1) : z{z1, cplx{}} {}
  Point(cplx z1, cplx z2) : z{z1, z2} {}

  cplx& operator[](std::size_t i) { return z[i]; }
  const cplx& operator[](std::size_t i) const { return z[i]; }

  friend bool operator==(const Point&, const Point&) = default;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

}  // namespace chebzero
