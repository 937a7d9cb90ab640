#include "chebzero/compactset.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "chebzero/error.hpp"

namespace chebzero {

SetFactor SetFactor::interval(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b) && a < b, "interval requires a < b");
  SetFactor f;
  f.kind = FactorKind::kInterval;
  f.a = a;
  f.b = b;
  f.radius = 0.0;
  return f;
}

SetFactor SetFactor::circle(double radius) {
  require(std::isfinite(radius) && radius > 0.0, "circle radius must be positive");
  SetFactor f;
  f.kind = FactorKind::kCircle;
  f.a = f.b = 0.0;
  f.radius = radius;
  return f;
}

SetFactor SetFactor::disk(double radius) {
  SetFactor f = circle(radius);
  f.kind = FactorKind::kDisk;
  return f;
}

ModelSet::ModelSet(SetFactor factor) : factors_{factor} {}
ModelSet::ModelSet(SetFactor first, SetFactor second) : factors_{first, second} {}

SetKind ModelSet::kind() const noexcept {
  if (factors_.size() > 1) return SetKind::kProduct;
  switch (factors_.front().kind) {
    case FactorKind::kInterval: return SetKind::kInterval;
    case FactorKind::kCircle: return SetKind::kCircle;
    case FactorKind::kDisk: return SetKind::kDisk;
  }
  return SetKind::kCircle;
}

namespace {

std::string describe_factor(const SetFactor& f) {
  std::ostringstream s;
  switch (f.kind) {
    case FactorKind::kInterval: s << "interval[" << f.a << ',' << f.b << ']'; break;
    case FactorKind::kCircle: s << "circle(" << f.radius << ')'; break;
    case FactorKind::kDisk: s << "disk(" << f.radius << ')'; break;
  }
  return s.str();
}

}  // namespace

std::string ModelSet::describe() const {
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += 'x';
    out += describe_factor(factors_[i]);
  }
  return out;
}

double green_value(const SetFactor& factor, cplx z) {
  switch (factor.kind) {
    case FactorKind::kInterval: {
      const double c = 0.5 * (factor.a + factor.b);
      const double h = 0.5 * (factor.b - factor.a);
      const cplx w = (z - c) / h;
      // Principal roots of w-1 and w+1 give the branch with |w + s| >= 1 off
      // the cut; the max() only absorbs rounding on the segment itself.
      const cplx s = std::sqrt(w - 1.0) * std::sqrt(w + 1.0);
      const double g = std::log(std::max(std::abs(w + s), std::abs(w - s)));
      return g > 0.0 ? g : 0.0;
    }
    case FactorKind::kCircle:
    case FactorKind::kDisk: {
      const double g = std::log(std::abs(z) / factor.radius);
      return g > 0.0 ? g : 0.0;
    }
  }
  return 0.0;
}

double green_value(const ModelSet& set, const Point& z) {
  double v = 0.0;
  for (int i = 0; i < set.dimension(); ++i) v = std::max(v, green_value(set.factor(i), z[i]));
  return v;
}

std::vector<cplx> boundary_sample(const SetFactor& factor, int count) {
  require(count >= 2, "boundary sample needs at least two points");
  std::vector<cplx> pts(static_cast<std::size_t>(count));
  if (factor.kind == FactorKind::kInterval) {
    const double c = 0.5 * (factor.a + factor.b);
    const double h = 0.5 * (factor.b - factor.a);
    for (int k = 0; k < count; ++k) {
      // Mirror-symmetric evaluation keeps the midpoint and endpoints exact.
      const int mirror = count - 1 - k;
      double x;
      if (2 * k == count - 1) {
        x = 0.0;
      } else if (k < mirror) {
        x = -std::cos(kPi * k / (count - 1));
      } else {
        x = std::cos(kPi * mirror / (count - 1));
      }
      pts[static_cast<std::size_t>(k)] = cplx(c + h * x, 0.0);
    }
    pts.front() = cplx(factor.a, 0.0);
    pts.back() = cplx(factor.b, 0.0);
  } else {
    for (int k = 0; k < count; ++k) {
      // Exact values at quarter turns so that e.g. four points are 1, i, -1, -i.
      cplx u;
      if ((4 * k) % count == 0) {
        static const cplx quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        u = quarter[(4 * k / count) % 4];
      } else {
        const double t = 2.0 * kPi * k / count;
        u = cplx(std::cos(t), std::sin(t));
      }
      pts[static_cast<std::size_t>(k)] = factor.radius * u;
    }
  }
  return pts;
}

std::vector<Point> boundary_sample(const ModelSet& set, int count) {
  const auto first = boundary_sample(set.factor(0), count);
  std::vector<Point> out;
  if (set.dimension() == 1) {
    out.reserve(first.size());
    for (cplx z : first) out.emplace_back(z);
    return out;
  }
  const auto second = boundary_sample(set.factor(1), count);
  out.reserve(first.size() * second.size());
  for (cplx z1 : first)
    for (cplx z2 : second) out.emplace_back(z1, z2);
  return out;
}

std::vector<Point> interior_sample(const ModelSet& set, int count, std::uint64_t seed) {
  require(count >= 1, "interior sample needs at least one point");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](const SetFactor& f) -> cplx {
    switch (f.kind) {
      case FactorKind::kInterval: return cplx(f.a + (f.b - f.a) * unit(rng), 0.0);
      case FactorKind::kCircle: return std::polar(f.radius, 2.0 * kPi * unit(rng));
      case FactorKind::kDisk: {
        const double r = f.radius * std::sqrt(unit(rng));
        return std::polar(r, 2.0 * kPi * unit(rng));
      }
    }
    return {};
  };
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Point p(draw(set.factor(0)));
    if (set.dimension() == 2) p[1] = draw(set.factor(1));
    out.push_back(p);
  }
  return out;
}

EquilibriumDensity::EquilibriumDensity(SetFactor factor) : factor_(factor) {}

double EquilibriumDensity::density(double t) const {
  if (factor_.kind == FactorKind::kInterval) {
    if (t <= factor_.a || t >= factor_.b) return 0.0;
    return 1.0 / (kPi * std::sqrt((t - factor_.a) * (factor_.b - t)));
  }
  return 1.0 / (2.0 * kPi);
}

double EquilibriumDensity::mass(double lo, double hi) const {
  if (hi <= lo) return 0.0;
  if (factor_.kind == FactorKind::kInterval) {
    const double c = 0.5 * (factor_.a + factor_.b);
    const double h = 0.5 * (factor_.b - factor_.a);
    auto cdf = [&](double x) {
      const double w = std::clamp((x - c) / h, -1.0, 1.0);
      return 0.5 + std::asin(w) / kPi;
    };
    return cdf(hi) - cdf(lo);
  }
  return std::min(hi - lo, 2.0 * kPi) / (2.0 * kPi);
}

double EquilibriumDensity::integrate(const std::function<double(cplx)>& f, int nodes) const {
  require(nodes >= 1, "quadrature needs at least one node");
  double sum = 0.0;
  if (factor_.kind == FactorKind::kInterval) {
    const double c = 0.5 * (factor_.a + factor_.b);
    const double h = 0.5 * (factor_.b - factor_.a);
    for (int k = 1; k <= nodes; ++k) {
      const double x = c + h * std::cos((2.0 * k - 1.0) * kPi / (2.0 * nodes));
      sum += f(cplx(x, 0.0));
    }
  } else {
    for (int k = 0; k < nodes; ++k) {
      sum += f(std::polar(factor_.radius, 2.0 * kPi * k / nodes));
    }
  }
  return sum / nodes;
}

EquilibriumDensity equilibrium_density(const ModelSet& set) {
  if (set.dimension() != 1) {
    fail(ErrorKind::kUnsupported,
         "closed-form equilibrium density is only available for m = 1 sets");
  }
  return EquilibriumDensity(set.factor(0));
}

}  // namespace chebzero
