#include "chebzero/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "chebzero/error.hpp"

namespace chebzero {

namespace {

std::size_t count_for(const Basis& basis, int n) {
  require(n >= 0 && n <= basis.max_degree(), "degree outside the basis range");
  return basis.count_for_degree(n);
}

// Bounding box of K in real coordinates.
Box set_bounds(const ModelSet& set) {
  Box b;
  for (const auto& f : set.factors()) {
    if (f.kind == FactorKind::kInterval) {
      b.lo.insert(b.lo.end(), {f.a, 0.0});
      b.hi.insert(b.hi.end(), {f.b, 0.0});
    } else {
      b.lo.insert(b.lo.end(), {-f.radius, -f.radius});
      b.hi.insert(b.hi.end(), {f.radius, f.radius});
    }
  }
  return b;
}

}  // namespace

GammaValue gamma(const Basis& basis, int n, const Point& z) {
  std::vector<double> logs;
  basis.log_abs_normalized(z, count_for(basis, n), logs);
  double top = -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (double l : logs) {
    const double t = 2.0 * l;
    if (!(t > -std::numeric_limits<double>::infinity())) continue;
    if (t > top) {
      acc = acc * std::exp(top - t) + 1.0;
      top = t;
    } else {
      acc += std::exp(t - top);
    }
  }
  GammaValue g;
  g.log_value = top + std::log(acc);
  g.value = std::exp(g.log_value);
  return g;
}

std::vector<cplx> lambda_vector(const Basis& basis, int n, const Point& z) {
  const std::size_t count = count_for(basis, n);
  std::vector<double> logs;
  basis.log_abs_normalized(z, count, logs);
  const double top = *std::max_element(logs.begin(), logs.end());
  std::vector<cplx> u;
  basis.normalized_values(z, count, u);
  double s = 0.0;
  for (auto& x : u) {
    x *= std::exp(-top);
    s += std::norm(x);
  }
  const double r = 1.0 / std::sqrt(s);
  for (auto& x : u) x *= r;
  return u;
}

double log_gamma_normalized(const Basis& basis, int n, const Point& z) {
  require(n >= 1, "(1/2n) log Gamma_n needs n >= 1");
  return gamma(basis, n, z).log_value / (2.0 * n);
}

BergmanField bergman_field(const Basis& basis, int n, const Box& box, int resolution) {
  const int m = basis.set().dimension();
  require(n >= 1, "Bergman field needs n >= 1");
  require(box.real_dimension() == 2 * m, "box dimension does not match the set");
  require(resolution >= (m == 1 ? 64 : 20), "grid resolution below the minimum for this dimension");
  const Box bounds = set_bounds(basis.set());
  for (int i = 0; i < 2 * m; ++i) {
    const auto k = static_cast<std::size_t>(i);
    require(box.lo[k] < bounds.lo[k] && box.hi[k] > bounds.hi[k], "box must contain K in its interior");
  }
  count_for(basis, n);

  BergmanField field;
  field.dimension = m;
  field.degree = n;
  field.resolution = resolution;
  field.box = box;
  const auto d = static_cast<std::size_t>(2 * m);
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= static_cast<std::size_t>(resolution);
  field.coordinates.reserve(total);
  std::vector<double> h(d);
  for (std::size_t i = 0; i < d; ++i) h[i] = (box.hi[i] - box.lo[i]) / (resolution - 1);

  std::vector<double> weighted(total);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t p = 0; p < total; ++p) {
    std::size_t rest = p;
    for (std::size_t i = d; i-- > 0;) {
      idx[i] = rest % static_cast<std::size_t>(resolution);
      rest /= static_cast<std::size_t>(resolution);
    }
    std::vector<double> x(d);
    double w = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = box.lo[i] + static_cast<double>(idx[i]) * h[i];
      if (idx[i] == 0 || idx[i] + 1 == static_cast<std::size_t>(resolution)) w *= 0.5;
      w *= h[i];
    }
    const Point z = point_from_reals(x);
    const double lg = gamma(basis, n, z).log_value;
    const double v = lg / (2.0 * n);
    const double g = green_value(basis.set(), z);
    field.coordinates.push_back(std::move(x));
    field.log_gamma.push_back(lg);
    field.normalized.push_back(v);
    field.green.push_back(g);
    field.abs_difference.push_back(std::abs(v - g));
    weighted[p] = w * std::abs(v - g);
    field.max_excess = p == 0 ? v - g : std::max(field.max_excess, v - g);
  }
  field.l1_error = pairwise_sum(weighted);
  field.mean_abs_error = field.l1_error / box.volume();
  return field;
}

double l1loc_error(const Basis& basis, int n, const Box& box, int resolution) {
  return bergman_field(basis, n, box, resolution).l1_error;
}

void BergmanField::write_csv(std::ostream& out) const {
  out << (dimension == 1 ? "x1,y1" : "x1,y1,x2,y2") << ",log_gamma,normalized,green,abs_diff\n";
  out.precision(17);
  for (std::size_t p = 0; p < log_gamma.size(); ++p) {
    for (double x : coordinates[p]) out << x << ',';
    out << log_gamma[p] << ',' << normalized[p] << ',' << green[p] << ',' << abs_difference[p]
        << '\n';
  }
}

}  // namespace chebzero
