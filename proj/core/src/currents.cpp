#include "chebzero/currents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chebzero/error.hpp"
#include "chebzero/grid.hpp"

namespace chebzero {

using nlohmann::json;

std::string to_string(PairingMethod method) {
  switch (method) {
    case PairingMethod::kAtomic: return "atomic";
    case PairingMethod::kPotential: return "potential";
    case PairingMethod::kEquilibrium: return "equilibrium";
  }
  return "atomic";
}

json PairingResult::to_json() const {
  return {{"method", to_string(method)},
          {"value", value},
          {"error_estimate", error_estimate},
          {"grid", points_per_axis},
          {"subdivided_cells", subdivided_cells},
          {"nudges", nudges}};
}

PairingResult pair_atomic(const RootSet& roots, int n, const TestFunction& chi) {
  require(chi.dimension() == 1, "atomic pairing is for m = 1");
  require(n >= 1, "pairing needs n >= 1");
  std::vector<double> terms;
  for (const auto& r : roots.roots) terms.push_back(r.multiplicity * chi.value(Point(r.z)));
  PairingResult p;
  p.method = PairingMethod::kAtomic;
  p.value = pairwise_sum(terms) / n;
  return p;
}

int minimum_points_per_axis(int m) { return m == 1 ? 128 : 24; }

namespace {

void check_grid(const TestFunction& chi, int points_per_axis) {
  require(points_per_axis >= minimum_points_per_axis(chi.dimension()),
          "grid below the minimum points per real axis for this dimension");
  require(points_per_axis % 2 == 0, "points per axis must be even for the error estimate");
}

double midpoint(const std::function<double(const Point&)>& g, const TestFunction& chi,
                int per_axis) {
  const CellGrid grid(chi.support_box(), per_axis);
  std::vector<double> terms(grid.total);
  for (std::size_t p = 0; p < grid.total; ++p) {
    const Point z = point_from_reals(grid.center(p));
    const double l = chi.dd_c(z);
    terms[p] = l == 0.0 ? 0.0 : g(z) * l;
  }
  return pairwise_sum(terms) * grid.cell_volume();
}

// Midpoint value of log|F| * dd^c chi over one cell, refined near zeros.
double potential_cell(const RandomPolynomial& f, const TestFunction& chi, const CellGrid& grid,
                      const std::vector<double>& x, double l, PairingResult& stats) {
  cplx d1, d2;
  const Point z = point_from_reals(x);
  const cplx v = f.evaluate(z, d1, d2);
  const double grad = std::sqrt(std::norm(d1) + std::norm(d2));
  const bool near_zero = v == cplx{} || (grad > 0.0 && std::abs(v) / grad < grid.width());
  if (!near_zero) return std::log(std::abs(v)) * l;

  ++stats.subdivided_cells;
  const int d = grid.d;
  const int subcells = 1 << d;
  std::vector<double> terms;
  for (int s = 0; s < subcells; ++s) {
    std::vector<double> y = x;
    for (int i = 0; i < d; ++i) {
      const auto k = static_cast<std::size_t>(i);
      y[k] += ((s >> i) & 1 ? 0.25 : -0.25) * grid.h[k];
    }
    Point w = point_from_reals(y);
    cplx fv = f.evaluate(w);
    if (fv == cplx{}) {
      ++stats.nudges;
      y[0] += 0.25 * grid.h[0];
      w = point_from_reals(y);
      fv = f.evaluate(w);
      if (fv == cplx{}) {
        fail(ErrorKind::kSingularCell, "exact zero of F at a nudged quadrature node");
      }
    }
    terms.push_back(std::log(std::abs(fv)) * chi.dd_c(w));
  }
  return pairwise_sum(terms) / subcells;
}

double potential_rule(const RandomPolynomial& f, const TestFunction& chi, int per_axis,
                      PairingResult& stats) {
  const CellGrid grid(chi.support_box(), per_axis);
  std::vector<double> terms(grid.total, 0.0);
  for (std::size_t p = 0; p < grid.total; ++p) {
    const auto x = grid.center(p);
    const double l = chi.dd_c(point_from_reals(x));
    if (l == 0.0) continue;
    terms[p] = potential_cell(f, chi, grid, x, l, stats);
  }
  return pairwise_sum(terms) * grid.cell_volume();
}

}  // namespace

PairingResult integrate_against_ddc(const std::function<double(const Point&)>& g,
                                    const TestFunction& chi, int points_per_axis) {
  check_grid(chi, points_per_axis);
  PairingResult p;
  p.method = PairingMethod::kPotential;
  p.points_per_axis = points_per_axis;
  p.value = midpoint(g, chi, points_per_axis);
  p.error_estimate = std::abs(p.value - midpoint(g, chi, points_per_axis / 2));
  return p;
}

PairingResult pair_potential(const RandomPolynomial& f, int n, const TestFunction& chi,
                             int points_per_axis, bool estimate_error) {
  require(n >= 1, "pairing needs n >= 1");
  require(chi.dimension() == f.basis().set().dimension(), "test function dimension mismatch");
  check_grid(chi, points_per_axis);
  PairingResult p;
  p.method = PairingMethod::kPotential;
  p.points_per_axis = points_per_axis;
  const double fine = potential_rule(f, chi, points_per_axis, p);
  p.value = fine / n;
  if (estimate_error) {
    PairingResult coarse_stats;
    const double coarse = potential_rule(f, chi, points_per_axis / 2, coarse_stats);
    p.error_estimate = std::abs(fine - coarse) / n;
  }
  return p;
}

PairingResult pair_equilibrium(const ModelSet& set, const TestFunction& chi, int points_per_axis) {
  require(chi.dimension() == set.dimension(), "test function dimension mismatch");
  if (set.dimension() == 1) {
    const EquilibriumDensity mu = equilibrium_density(set);
    auto f = [&](cplx z) { return chi.value(Point(z)); };
    const int nodes = 1 << 16;
    PairingResult p;
    p.method = PairingMethod::kEquilibrium;
    p.value = mu.integrate(f, nodes);
    p.error_estimate = std::abs(p.value - mu.integrate(f, nodes / 2));
    return p;
  }
  PairingResult p = integrate_against_ddc(
      [&](const Point& z) { return green_value(set, z); }, chi, points_per_axis);
  p.method = PairingMethod::kEquilibrium;
  return p;
}

double dphi_constant(const TestFunction& chi, const ModelSet& set, int points_per_axis) {
  check_grid(chi, points_per_axis);
  const CellGrid grid(chi.support_box(), points_per_axis);
  std::vector<double> abs_terms(grid.total), green_terms(grid.total);
  double sup = 0.0;
  for (std::size_t p = 0; p < grid.total; ++p) {
    const Point z = point_from_reals(grid.center(p));
    const double l = chi.dd_c(z);
    abs_terms[p] = std::abs(l);
    green_terms[p] = l == 0.0 ? 0.0 : green_value(set, z) * l;
    sup = std::max(sup, std::abs(l));
  }
  const double vol = grid.cell_volume();
  const double l1 = pairwise_sum(abs_terms) * vol;
  const double vk = std::abs(pairwise_sum(green_terms) * vol);
  return std::max({l1, vk, sup * chi.support_volume()});
}

}  // namespace chebzero
