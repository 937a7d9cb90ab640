#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chebzero/types.hpp"

namespace chebzero {

/// Axis-aligned box in R^{2m}, coordinates ordered (Re z1, Im z1, Re z2, Im z2).
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  int real_dimension() const noexcept { return static_cast<int>(lo.size()); }
  double volume() const;
  bool contains(const Box& inner, double margin = 0.0) const;

  /// [-half, half]^{2m}.
  static Box centered(int m, double half);
};

/// Midpoint cells of a box, `per_axis` cells along each real axis. Cells are
/// numbered with the last coordinate varying fastest.
struct CellGrid {
  Box box;
  int d = 2;
  int cells = 0;
  std::vector<double> h;
  std::size_t total = 0;

  CellGrid(const Box& b, int per_axis);
  double cell_volume() const;
  double width() const;
  std::vector<double> center(std::size_t index) const;
};

/// Point of C^m from real coordinates in the Box ordering.
Point point_from_reals(std::span<const double> x);

/// Pairwise (tree) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

}  // namespace chebzero
