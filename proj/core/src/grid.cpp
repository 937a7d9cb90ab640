#include "chebzero/grid.hpp"

#include <algorithm>

#include "chebzero/error.hpp"

namespace chebzero {

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

bool Box::contains(const Box& inner, double margin) const {
  if (inner.lo.size() != lo.size()) return false;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (inner.lo[i] < lo[i] + margin || inner.hi[i] > hi[i] - margin) return false;
  }
  return true;
}

Box Box::centered(int m, double half) {
  require(m == 1 || m == 2, "boxes are defined for m = 1, 2");
  require(half > 0.0, "box half-width must be positive");
  const auto d = static_cast<std::size_t>(2 * m);
  return Box{std::vector<double>(d, -half), std::vector<double>(d, half)};
}

Point point_from_reals(std::span<const double> x) {
  if (x.size() == 2) return Point(cplx(x[0], x[1]));
  return Point(cplx(x[0], x[1]), cplx(x[2], x[3]));
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

CellGrid::CellGrid(const Box& b, int per_axis) : box(b), d(b.real_dimension()), cells(per_axis) {
  total = 1;
  for (int i = 0; i < d; ++i) {
    const auto k = static_cast<std::size_t>(i);
    h.push_back((box.hi[k] - box.lo[k]) / per_axis);
    total *= static_cast<std::size_t>(per_axis);
  }
}

double CellGrid::cell_volume() const {
  double v = 1.0;
  for (double x : h) v *= x;
  return v;
}

double CellGrid::width() const { return *std::max_element(h.begin(), h.end()); }

std::vector<double> CellGrid::center(std::size_t index) const {
  std::vector<double> x(static_cast<std::size_t>(d));
  for (int i = d; i-- > 0;) {
    const auto k = static_cast<std::size_t>(i);
    const std::size_t idx = index % static_cast<std::size_t>(cells);
    index /= static_cast<std::size_t>(cells);
    x[k] = box.lo[k] + (static_cast<double>(idx) + 0.5) * h[k];
  }
  return x;
}

}  // namespace chebzero
