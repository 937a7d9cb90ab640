#include "chebzero/chebyshev.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "chebzero/error.hpp"
#include "lawson.hpp"

namespace chebzero {

std::string to_string(BasisFamily family) {
  switch (family) {
    case BasisFamily::kMinimax: return "minimax";
    case BasisFamily::kLeja: return "leja";
    case BasisFamily::kL2: return "l2mu";
  }
  return "minimax";
}

BasisFamily basis_family_from_string(const std::string& name) {
  if (name == "minimax") return BasisFamily::kMinimax;
  if (name == "leja") return BasisFamily::kLeja;
  if (name == "l2mu" || name == "l2") return BasisFamily::kL2;
  fail(ErrorKind::kInvalidArgument, "unknown basis family '" + name + "'");
}

double MonicPolynomial::leading_coefficient() const {
  if (representation == Representation::kProduct) return 1.0;
  return coefficients.empty() ? 0.0 : std::real(coefficients.back());
}

cplx evaluate(const MonicPolynomial& p, const SetFrame& frame, const MultiIndexTable& table,
              const Point& z) {
  if (p.representation == MonicPolynomial::Representation::kProduct) {
    cplx v = 1.0;
    for (cplx r : p.coefficients) v *= z[0] - r;
    return v;
  }
  std::vector<cplx> phi;
  frame.values(table, p.coefficients.size(), z, phi);
  cplx s = 0.0;
  for (std::size_t l = 0; l < phi.size(); ++l) s += p.coefficients[l] * phi[l];
  return std::exp(p.log_scale) * s;
}

namespace {

cplx factor_point(const SetFactor& f, double t) {
  if (f.kind == FactorKind::kInterval) return {t, 0.0};
  return std::polar(f.radius, t);
}

// Grid parameters matching boundary_sample: x for intervals, angle otherwise.
std::vector<double> factor_parameters(const SetFactor& f, int count) {
  std::vector<double> t(static_cast<std::size_t>(count));
  if (f.kind == FactorKind::kInterval) {
    const auto pts = boundary_sample(f, count);
    for (std::size_t i = 0; i < pts.size(); ++i) t[i] = pts[i].real();
  } else {
    for (int k = 0; k < count; ++k) t[static_cast<std::size_t>(k)] = 2.0 * kPi * k / count;
  }
  return t;
}

struct Bracket {
  double lo, hi;
};

Bracket neighbour_bracket(const SetFactor& f, const std::vector<double>& t, std::size_t i) {
  const std::size_t n = t.size();
  if (f.kind == FactorKind::kInterval) {
    return {t[i == 0 ? 0 : i - 1], t[i + 1 == n ? n - 1 : i + 1]};
  }
  const double step = 2.0 * kPi / static_cast<double>(n);
  return {t[i] - step, t[i] + step};
}

template <class F>
double golden_maximize(F&& g, double lo, double hi, double& best_t) {
  constexpr double r = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 80 && (b - a) > 1e-15 * (1.0 + std::abs(a)); ++it) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - r * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + r * (b - a);
      gd = g(d);
    }
  }
  if (gc >= gd) {
    best_t = c;
    return gc;
  }
  best_t = d;
  return gd;
}

}  // namespace

SupNorm sup_norm(const std::function<cplx(const Point&)>& f, const ModelSet& set, int grid_size) {
  require(grid_size >= 2, "sup norm grid needs at least two points per factor");
  constexpr std::size_t kRefine = 16;
  SupNorm out;
  if (set.dimension() == 1) {
    const SetFactor& fac = set.factor(0);
    const auto t = factor_parameters(fac, grid_size);
    const std::size_t n = t.size();
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = std::abs(f(Point(factor_point(fac, t[i]))));
    out.grid_value = *std::max_element(a.begin(), a.end());
    const bool cyclic = fac.kind != FactorKind::kInterval;
    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < n; ++i) {
      const double left = (i > 0) ? a[i - 1] : (cyclic ? a[n - 1] : -1.0);
      const double right = (i + 1 < n) ? a[i + 1] : (cyclic ? a[0] : -1.0);
      if (a[i] >= left && a[i] >= right) peaks.push_back(i);
    }
    std::sort(peaks.begin(), peaks.end(), [&](std::size_t x, std::size_t y) {
      return a[x] > a[y] || (a[x] == a[y] && x < y);
    });
    if (peaks.size() > kRefine) peaks.resize(kRefine);
    out.value = out.grid_value;
    auto g = [&](double s) { return std::abs(f(Point(factor_point(fac, s)))); };
    for (std::size_t i : peaks) {
      const Bracket br = neighbour_bracket(fac, t, i);
      double ts;
      out.value = std::max(out.value, golden_maximize(g, br.lo, br.hi, ts));
    }
    return out;
  }

  const SetFactor& f1 = set.factor(0);
  const SetFactor& f2 = set.factor(1);
  const auto t1 = factor_parameters(f1, grid_size);
  const auto t2 = factor_parameters(f2, grid_size);
  const std::size_t n = t1.size();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      a[i * n + k] = std::abs(f(Point(factor_point(f1, t1[i]), factor_point(f2, t2[k]))));
  out.grid_value = *std::max_element(a.begin(), a.end());
  out.value = out.grid_value;

  std::vector<std::size_t> order(a.size());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(std::min(kRefine, order.size())),
                    order.end(), [&](std::size_t x, std::size_t y) {
                      return a[x] > a[y] || (a[x] == a[y] && x < y);
                    });
  order.resize(std::min(kRefine, order.size()));
  for (std::size_t idx : order) {
    const std::size_t i = idx / n, k = idx % n;
    const Bracket b1 = neighbour_bracket(f1, t1, i);
    const Bracket b2 = neighbour_bracket(f2, t2, k);
    double s1 = t1[i], s2 = t2[k];
    double best = a[idx];
    for (int sweep = 0; sweep < 3; ++sweep) {
      double ns1, ns2;
      best = std::max(best, golden_maximize(
          [&](double s) { return std::abs(f(Point(factor_point(f1, s), factor_point(f2, s2)))); },
          b1.lo, b1.hi, ns1));
      s1 = ns1;
      best = std::max(best, golden_maximize(
          [&](double s) { return std::abs(f(Point(factor_point(f1, s1), factor_point(f2, s)))); },
          b2.lo, b2.hi, ns2));
      s2 = ns2;
    }
    out.value = std::max(out.value, best);
  }
  return out;
}

int default_grid_size(const ModelSet& set, int degree) {
  if (set.dimension() == 2) return std::max(64, 4 * (degree + 1));
  const int base = std::max(1024, 32 * degree);
  if (set.kind() == SetKind::kInterval && degree >= 1) {
    // N - 1 divisible by the degree puts the extremal points of T_s on the grid.
    return degree * ((base - 1 + degree - 1) / degree) + 1;
  }
  return base;
}

// --------------------------------------------------------------------------
// Basis

Basis::Basis(ModelSet set, BasisFamily family, int max_degree,
             std::vector<MonicPolynomial> elements, std::vector<double> sup_norms)
    : set_(std::move(set)),
      family_(family),
      table_(set_.dimension(), max_degree),
      frame_(set_),
      elements_(std::move(elements)),
      sup_norms_(std::move(sup_norms)) {
  require(elements_.size() == table_.size(), "basis must have one element per multi-index");
  require(sup_norms_.size() == elements_.size(), "one sup norm per basis element");
  log_normalizers_.resize(elements_.size());
  for (std::size_t j = 0; j < elements_.size(); ++j) {
    const auto& e = elements_[j];
    require(e.leading == table_[j], "basis element out of table order");
    require(sup_norms_[j] > 0.0 && std::isfinite(sup_norms_[j]), "sup norms must be positive");
    if (e.representation == MonicPolynomial::Representation::kProduct) {
      require(set_.dimension() == 1, "product-form elements need m = 1");
      require(e.coefficients.size() == static_cast<std::size_t>(e.leading.degree()),
              "product-form element has the wrong number of roots");
      if (j > 0) {
        const auto& prev = elements_[j - 1].coefficients;
        require(std::equal(prev.begin(), prev.end(), e.coefficients.begin()),
                "product-form basis must use a nested root sequence");
      }
      log_normalizers_[j] = -std::log(sup_norms_[j]);
    } else {
      require(e.coefficients.size() == j + 1, "frame element has the wrong number of coefficients");
      require(e.coefficients.back() == cplx(1.0), "frame element is not monic");
      log_normalizers_[j] = e.log_scale - std::log(sup_norms_[j]);
    }
  }
  for (std::size_t j = 1; j < elements_.size(); ++j) {
    require(elements_[j].representation == elements_[0].representation ||
                elements_[0].leading.degree() == 0,
            "mixed representations within one basis");
  }
}

std::size_t Basis::count_for_degree(int n) const {
  require(n >= 0 && n <= max_degree(), "degree outside the basis range");
  return static_cast<std::size_t>(dimension(set_.dimension(), n));
}

bool Basis::uses_product_form() const noexcept {
  return elements_.size() > 1 &&
         elements_[1].representation == MonicPolynomial::Representation::kProduct;
}

cplx Basis::monic_value(std::size_t j, const Point& z) const {
  return evaluate(elements_[j], frame_, table_, z);
}

void Basis::normalized_values(const Point& z, std::size_t count, std::vector<cplx>& out) const {
  require(count <= elements_.size(), "requested more basis elements than available");
  out.resize(count);
  if (count == 0) return;
  if (uses_product_form()) {
    const auto& roots = elements_[count - 1].coefficients;
    cplx p = 1.0;
    for (std::size_t j = 0; j < count; ++j) {
      out[j] = p / sup_norms_[j];
      if (j < roots.size()) p *= z[0] - roots[j];
    }
    return;
  }
  std::vector<cplx> phi;
  frame_.values(table_, count, z, phi);
  for (std::size_t j = 0; j < count; ++j) {
    const auto& c = elements_[j].coefficients;
    cplx s = 0.0;
    for (std::size_t l = 0; l <= j; ++l) s += c[l] * phi[l];
    out[j] = std::exp(log_normalizers_[j]) * s;
  }
}

void Basis::log_abs_normalized(const Point& z, std::size_t count, std::vector<double>& out) const {
  require(count <= elements_.size(), "requested more basis elements than available");
  out.resize(count);
  if (count == 0) return;
  if (uses_product_form()) {
    const auto& roots = elements_[count - 1].coefficients;
    double acc = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
      out[j] = acc + log_normalizers_[j];
      if (j < roots.size()) acc += std::log(std::abs(z[0] - roots[j]));
    }
    return;
  }
  std::vector<cplx> phi;
  frame_.values(table_, count, z, phi);
  for (std::size_t j = 0; j < count; ++j) {
    const auto& c = elements_[j].coefficients;
    cplx s = 0.0;
    for (std::size_t l = 0; l <= j; ++l) s += c[l] * phi[l];
    out[j] = std::log(std::abs(s)) + log_normalizers_[j];
  }
}

// --------------------------------------------------------------------------
// Minimax

namespace {

MonicPolynomial constant_one(int m) {
  MonicPolynomial p;
  p.leading = MultiIndex(std::vector<int>(static_cast<std::size_t>(m), 0));
  p.representation = MonicPolynomial::Representation::kFrame;
  p.coefficients = {cplx(1.0)};
  p.log_scale = 0.0;
  return p;
}

int count_alternation_runs(const std::vector<double>& a, double threshold, bool cyclic) {
  const std::size_t n = a.size();
  std::size_t above = 0;
  for (double x : a) above += x >= threshold;
  if (above == n) return static_cast<int>(n);
  int runs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool here = a[i] >= threshold;
    const bool prev = i > 0 ? a[i - 1] >= threshold : (cyclic ? a[n - 1] >= threshold : false);
    if (here && !prev) ++runs;
  }
  return runs;
}

}  // namespace

MinimaxResult minimax_monic(const ModelSet& set, const MultiIndexTable& table, std::size_t j,
                            const MinimaxOptions& options) {
  require(j < table.size(), "table position out of range");
  require(table.dimension() == set.dimension(), "table dimension does not match the set");
  const int s = table.degree_at(j);
  require(s >= 1, "minimax_monic needs s(j) >= 1");
  require(options.max_iters >= 1, "max_iters must be positive");
  require(options.damping > 0.0, "damping exponent must be positive");
  if (set.dimension() == 2) require(s <= 12, "m = 2 minimax solves are limited to total degree 12");
  const int grid = options.grid_size > 0 ? options.grid_size : default_grid_size(set, s);
  require(grid >= 4 * (s + 1), "grid_size must be at least 4 (s(j) + 1)");

  const SetFrame frame(set);
  detail::LawsonOutcome outcome;
  if (set.dimension() == 1 && set.kind() == SetKind::kInterval) {
    outcome = detail::lawson_interval(grid, s, options);
  } else if (set.dimension() == 1) {
    outcome = detail::lawson_circle(grid, s, options);
  } else {
    const auto pts = boundary_sample(set, grid);
    Eigen::MatrixXcd lower(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(j));
    Eigen::VectorXcd leading(static_cast<Eigen::Index>(pts.size()));
    std::vector<cplx> phi;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      frame.values(table, j + 1, pts[i], phi);
      for (std::size_t l = 0; l < j; ++l) {
        lower(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) = phi[l];
      }
      leading(static_cast<Eigen::Index>(i)) = phi[j];
    }
    outcome = detail::lawson_dense(lower, leading, options);
  }

  MinimaxResult result;
  result.polynomial.leading = table[j];
  result.polynomial.representation = MonicPolynomial::Representation::kFrame;
  result.polynomial.coefficients = outcome.coefficients;
  result.polynomial.log_scale = -frame.log_leading(table[j]);
  result.iterations = outcome.iterations;
  result.grid_size = grid;

  if (!outcome.converged) {
    const double last = outcome.grid_max_history.empty() ? 0.0 : outcome.grid_max_history.back();
    throw NonConvergenceError("Lawson iteration did not settle within max_iters for j = " +
                                  std::to_string(j + 1),
                              outcome.coefficients, last, outcome.iterations);
  }

  auto eval = [&](const Point& z) { return evaluate(result.polynomial, frame, table, z); };
  const SupNorm sup = sup_norm(eval, set, grid);
  result.sup_norm = sup.value;
  result.grid_max = sup.grid_value;

  // Histories were computed for a differently scaled monic polynomial; map
  // them to the z-monic scale using the final grid maximum.
  const double last = outcome.grid_max_history.back();
  const double ratio = last > 0.0 ? sup.grid_value / last : 1.0;
  for (double v : outcome.weighted_l2_history) result.weighted_l2_history.push_back(v * ratio);
  for (double v : outcome.grid_max_history) result.grid_max_history.push_back(v * ratio);

  if (set.dimension() == 1) {
    const auto pts = boundary_sample(set, grid);
    std::vector<double> a(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) a[i] = std::abs(eval(pts[i]));
    result.alternation_count = count_alternation_runs(a, sup.grid_value / 1.02,
                                                      set.kind() != SetKind::kInterval);
  }
  return result;
}

Basis minimax_basis(const ModelSet& set, int n, const MinimaxOptions& options) {
  require(n >= 0, "degree must be non-negative");
  if (set.dimension() == 2) require(n <= 12, "m = 2 minimax bases are limited to degree 12");
  const MultiIndexTable table(set.dimension(), n);
  std::vector<MonicPolynomial> elements{constant_one(set.dimension())};
  std::vector<double> norms{1.0};
  for (std::size_t j = 1; j < table.size(); ++j) {
    MinimaxResult r = minimax_monic(set, table, j, options);
    elements.push_back(std::move(r.polynomial));
    norms.push_back(r.sup_norm);
  }
  return Basis(set, BasisFamily::kMinimax, n, std::move(elements), std::move(norms));
}

// --------------------------------------------------------------------------
// Leja

std::vector<cplx> leja_points(const ModelSet& set, int count, int grid_size) {
  require(set.dimension() == 1, "Leja points are implemented for m = 1");
  require(count >= 1, "count must be positive");
  const int grid = grid_size > 0 ? grid_size : std::max(4096, 32 * count);
  require(grid >= count, "Leja grid is smaller than the requested count");
  const auto pts = boundary_sample(set.factor(0), grid);
  const std::size_t n = pts.size();

  // Rightmost point: the last CGL node, or angle 0 on circles.
  const std::size_t first = set.kind() == SetKind::kInterval ? n - 1 : 0;
  std::vector<cplx> out{pts[first]};
  std::vector<double> logprod(n, 0.0);
  std::vector<bool> taken(n, false);
  taken[first] = true;
  for (int k = 1; k < count; ++k) {
    const cplx last = out.back();
    for (std::size_t i = 0; i < n; ++i) {
      if (!taken[i]) logprod[i] += std::log(std::abs(pts[i] - last));
    }
    // Grid order is ascending x / ascending angle, so keeping the first of
    // (near-)equal maxima implements the tie rule.
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      if (best == n || logprod[i] > logprod[best] + 1e-12 * (1.0 + std::abs(logprod[best]))) {
        best = i;
      }
    }
    require(best < n, "Leja grid exhausted");
    taken[best] = true;
    out.push_back(pts[best]);
  }
  return out;
}

Basis leja_basis(const ModelSet& set, int n, int grid_size) {
  require(set.dimension() == 1, "Leja bases are implemented for m = 1");
  require(n >= 0, "degree must be non-negative");
  const std::vector<cplx> zeta = n > 0 ? leja_points(set, n, grid_size) : std::vector<cplx>{};
  std::vector<MonicPolynomial> elements;
  std::vector<double> norms;
  const MultiIndexTable table(1, n);
  const SetFrame frame(set);
  for (int s = 0; s <= n; ++s) {
    MonicPolynomial p;
    p.leading = MultiIndex({s});
    p.representation = MonicPolynomial::Representation::kProduct;
    p.coefficients.assign(zeta.begin(), zeta.begin() + s);
    if (s == 0) {
      norms.push_back(1.0);
    } else {
      auto eval = [&](const Point& z) { return evaluate(p, frame, table, z); };
      norms.push_back(sup_norm(eval, set, default_grid_size(set, s)).value);
    }
    elements.push_back(std::move(p));
  }
  return Basis(set, BasisFamily::kLeja, n, std::move(elements), std::move(norms));
}

// --------------------------------------------------------------------------
// L2(mu)-minimal

QuadratureGrid reference_measure(const ModelSet& set, int nodes_per_factor) {
  require(nodes_per_factor >= 1, "reference measure needs nodes");
  auto factor_nodes = [&](const SetFactor& f) {
    std::vector<cplx> x(static_cast<std::size_t>(nodes_per_factor));
    if (f.kind == FactorKind::kInterval) {
      const double c = 0.5 * (f.a + f.b), h = 0.5 * (f.b - f.a);
      for (int k = 1; k <= nodes_per_factor; ++k) {
        x[static_cast<std::size_t>(k - 1)] =
            cplx(c + h * std::cos((2.0 * k - 1.0) * kPi / (2.0 * nodes_per_factor)), 0.0);
      }
    } else {
      x = boundary_sample(f, nodes_per_factor);
    }
    return x;
  };
  QuadratureGrid g;
  const auto x1 = factor_nodes(set.factor(0));
  if (set.dimension() == 1) {
    for (cplx z : x1) g.nodes.emplace_back(z);
  } else {
    const auto x2 = factor_nodes(set.factor(1));
    for (cplx a : x1)
      for (cplx b : x2) g.nodes.emplace_back(a, b);
  }
  g.weights.assign(g.nodes.size(), 1.0 / static_cast<double>(g.nodes.size()));
  return g;
}

namespace {

// Gram-Schmidt (twice) on the weighted frame columns; coefficient vectors of
// the orthogonal columns in terms of the original frame columns.
std::vector<std::vector<cplx>> gram_schmidt_coefficients(const ModelSet& set,
                                                         const QuadratureGrid& measure,
                                                         const MultiIndexTable& table,
                                                         std::size_t count) {
  require(measure.nodes.size() == measure.weights.size(), "measure nodes and weights differ in size");
  const SetFrame frame(set);
  const std::size_t K = measure.nodes.size();
  Eigen::MatrixXcd A(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(count));
  std::vector<cplx> phi;
  for (std::size_t i = 0; i < K; ++i) {
    frame.values(table, count, measure.nodes[i], phi);
    const double sw = std::sqrt(measure.weights[i]);
    for (std::size_t l = 0; l < count; ++l) {
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) = sw * phi[l];
    }
  }
  std::vector<std::vector<cplx>> coef(count);
  Eigen::MatrixXcd V = A;
  std::vector<double> norms2(count);
  for (std::size_t j = 0; j < count; ++j) {
    coef[j].assign(j + 1, cplx{});
    coef[j][j] = 1.0;
    const double original = V.col(static_cast<Eigen::Index>(j)).norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t l = 0; l < j; ++l) {
        const cplx mu = V.col(static_cast<Eigen::Index>(l)).dot(V.col(static_cast<Eigen::Index>(j))) / norms2[l];
        V.col(static_cast<Eigen::Index>(j)) -= mu * V.col(static_cast<Eigen::Index>(l));
        for (std::size_t q = 0; q <= l; ++q) coef[j][q] -= mu * coef[l][q];
      }
    }
    const double nrm = V.col(static_cast<Eigen::Index>(j)).norm();
    if (!(nrm > 1e-12 * original)) {
      fail(ErrorKind::kRankDeficiency,
           "Gram matrix is numerically singular at j = " + std::to_string(j + 1));
    }
    norms2[j] = nrm * nrm;
  }
  return coef;
}

}  // namespace

MonicPolynomial l2_minimal(const ModelSet& set, const QuadratureGrid& measure,
                           const MultiIndexTable& table, std::size_t j) {
  require(j < table.size(), "table position out of range");
  const SetFrame frame(set);
  if (table.degree_at(j) == 0) return constant_one(set.dimension());
  auto coef = gram_schmidt_coefficients(set, measure, table, j + 1);
  MonicPolynomial p;
  p.leading = table[j];
  p.representation = MonicPolynomial::Representation::kFrame;
  p.coefficients = std::move(coef[j]);
  p.coefficients.back() = 1.0;
  p.log_scale = -frame.log_leading(table[j]);
  return p;
}

Basis l2_basis(const ModelSet& set, int n, int nodes_per_factor) {
  require(n >= 0, "degree must be non-negative");
  const MultiIndexTable table(set.dimension(), n);
  const int nodes = nodes_per_factor > 0 ? nodes_per_factor
                    : set.dimension() == 1 ? std::max(1024, 4 * (n + 1))
                                           : std::max(64, 4 * (n + 1));
  const QuadratureGrid mu = reference_measure(set, nodes);
  auto coef = gram_schmidt_coefficients(set, mu, table, table.size());
  const SetFrame frame(set);
  std::vector<MonicPolynomial> elements;
  std::vector<double> norms;
  for (std::size_t j = 0; j < table.size(); ++j) {
    if (j == 0) {
      elements.push_back(constant_one(set.dimension()));
      norms.push_back(1.0);
      continue;
    }
    MonicPolynomial p;
    p.leading = table[j];
    p.representation = MonicPolynomial::Representation::kFrame;
    p.coefficients = std::move(coef[j]);
    p.coefficients.back() = 1.0;
    p.log_scale = -frame.log_leading(table[j]);
    auto eval = [&](const Point& z) { return evaluate(p, frame, table, z); };
    norms.push_back(sup_norm(eval, set, default_grid_size(set, table.degree_at(j))).value);
    elements.push_back(std::move(p));
  }
  return Basis(set, BasisFamily::kL2, n, std::move(elements), std::move(norms));
}

Basis build_basis(const ModelSet& set, BasisFamily family, int n, const MinimaxOptions& minimax) {
  switch (family) {
    case BasisFamily::kMinimax: return minimax_basis(set, n, minimax);
    case BasisFamily::kLeja: return leja_basis(set, n);
    case BasisFamily::kL2: return l2_basis(set, n);
  }
  fail(ErrorKind::kInvalidArgument, "unknown basis family");
}

// --------------------------------------------------------------------------
// Chebyshev constants and directional diagnostics

ChebyshevReport chebyshev_constants(const Basis& basis) {
  ChebyshevReport report;
  const auto& table = basis.table();
  bool any = false;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    ChebyshevRecord r;
    r.j = j + 1;
    r.index = table[j];
    r.degree = table.degree_at(j);
    r.sup_norm = basis.sup_norm(j);
    if (r.degree >= 1) {
      r.tau = std::exp(std::log(r.sup_norm) / r.degree);
      any = true;
    }
    report.records.push_back(std::move(r));
  }
  if (any && basis.set().dimension() == 1) {
    const int n = basis.max_degree();
    const int from = std::max(1, n - std::max(1, n / 4) + 1);
    double sum = 0.0;
    int count = 0;
    for (const auto& r : report.records) {
      if (r.degree >= from) {
        sum += r.tau;
        ++count;
      }
    }
    report.limit_estimate = count ? sum / count : 0.0;
  }
  return report;
}

void ChebyshevReport::write_csv(std::ostream& out) const {
  const int m = records.empty() ? 1 : records.front().index.dimension();
  out << "j";
  for (int i = 1; i <= m; ++i) out << ",k_" << i;
  out << ",s,sup_norm,tau\n";
  out.precision(17);
  for (const auto& r : records) {
    out << r.j;
    for (int e : r.index.entries()) out << ',' << e;
    out << ',' << r.degree << ',' << r.sup_norm << ',' << r.tau << '\n';
  }
}

bool ZAsymptoticReport::all_pass() const {
  return std::all_of(directions.begin(), directions.end(),
                     [](const DirectionDiagnostic& d) { return d.pass; });
}

ZAsymptoticReport verify_z_asymptotic(const Basis& basis,
                                      const std::vector<SimplexDirection>& directions,
                                      double tolerance) {
  require(tolerance > 0.0, "tolerance must be positive");
  require(basis.set().dimension() <= 2, "m <= 2 only");
  const auto& table = basis.table();
  bool any_positive = false;
  for (std::size_t j = 0; j < basis.size(); ++j) any_positive |= table.degree_at(j) >= 1;
  if (!any_positive) {
    fail(ErrorKind::kInsufficientData, "basis has no elements of positive degree");
  }
  require(basis.size() >= static_cast<std::size_t>(dimension(basis.set().dimension(), 8)),
          "basis must contain at least dimension(m, 8) elements");

  ZAsymptoticReport report;
  for (const auto& theta : directions) {
    DirectionDiagnostic d;
    d.theta = theta;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (table.degree_at(j) < 1) continue;
      if (direction(table[j]).distance(theta) <= tolerance) {
        d.members.push_back(j);
        d.taus.push_back(std::exp(std::log(basis.sup_norm(j)) / table.degree_at(j)));
      }
    }
    if (d.members.size() < 4) {
      fail(ErrorKind::kInsufficientData,
           "fewer than 4 basis elements follow the requested direction");
    }
    const std::size_t q = std::max<std::size_t>(2, (d.taus.size() + 3) / 4);
    const auto tail_begin = d.taus.end() - static_cast<long>(q);
    const auto [lo, hi] = std::minmax_element(tail_begin, d.taus.end());
    d.last_quartile_spread = *hi - *lo;
    d.limit_estimate = std::accumulate(tail_begin, d.taus.end(), 0.0) / static_cast<double>(q);
    d.pass = d.last_quartile_spread < tolerance;
    report.directions.push_back(std::move(d));
  }
  return report;
}

std::vector<SimplexDirection> default_directions(int m) {
  if (m == 1) return {SimplexDirection{{1.0}}};
  return {SimplexDirection{{1.0, 0.0}}, SimplexDirection{{0.0, 1.0}},
          SimplexDirection{{0.5, 0.5}}};
}

}  // namespace chebzero
