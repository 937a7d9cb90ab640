#include "chebzero/zeros.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "chebzero/bergman.hpp"
#include "chebzero/error.hpp"

namespace chebzero {

RandomPolynomial::RandomPolynomial(const Basis& basis, int n, std::vector<cplx> a)
    : n_(n), series_(basis, a) {
  require(n >= 0 && n <= basis.max_degree(), "degree outside the basis range");
  require(a.size() == basis.count_for_degree(n), "coefficient vector length must equal d_n");
  require(std::any_of(a.begin(), a.end(), [](cplx x) { return x != cplx{}; }),
          "random polynomial is identically zero");
}

double RandomPolynomial::log_abs(const Point& z) const {
  const Basis& b = basis();
  const std::size_t d = coefficients().size();
  std::vector<double> logs;
  b.log_abs_normalized(z, d, logs);
  const double top = *std::max_element(logs.begin(), logs.end());
  if (!std::isfinite(top)) return std::log(std::abs(evaluate(z)));
  std::vector<cplx> u;
  b.normalized_values(z, d, u);
  const double shrink = std::exp(-top);
  cplx p = 0.0;
  double s = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const cplx uj = u[j] * shrink;
    p += coefficients()[j] * uj;
    s += std::norm(uj);
  }
  const double r = std::abs(p);
  if (r == 0.0) return -std::numeric_limits<double>::infinity();
  // log|<a, lambda>| + (1/2) log Gamma with the common factor exp(top) removed.
  return std::log(r / std::sqrt(s)) + 0.5 * std::log(s) + top;
}

namespace {

// Samples F at M = 2(n+1) points and returns frame coefficients 0..n.
std::vector<cplx> interpolate_in_frame(const RandomPolynomial& f) {
  const SetFactor& fac = f.basis().set().factor(0);
  const AxisFrame axis(fac);
  const int n = f.degree();
  const int M = 2 * (n + 1);
  std::vector<cplx> b(static_cast<std::size_t>(n) + 1, cplx{});
  if (axis.kind() == AxisFrame::Kind::kPower) {
    // Fourier coefficients on the circle |w| = 1.
    std::vector<cplx> vals(static_cast<std::size_t>(M));
    for (int k = 0; k < M; ++k) {
      const cplx w = std::polar(1.0, 2.0 * kPi * k / M);
      vals[static_cast<std::size_t>(k)] = f.evaluate(Point(axis.global(w)));
    }
    for (int q = 0; q <= n; ++q) {
      cplx s = 0.0;
      for (int k = 0; k < M; ++k) {
        s += vals[static_cast<std::size_t>(k)] * std::polar(1.0, -2.0 * kPi * ((q * k) % M) / M);
      }
      b[static_cast<std::size_t>(q)] = s / static_cast<double>(M);
    }
    return b;
  }
  // Chebyshev coefficients from samples at the M Chebyshev-Lobatto points of
  // the interval itself (DCT-I).
  const int N = M;
  std::vector<cplx> vals(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double x = std::cos(kPi * i / (N - 1));
    vals[static_cast<std::size_t>(i)] = f.evaluate(Point(axis.global(cplx(x, 0.0))));
  }
  for (int q = 0; q <= n; ++q) {
    cplx s = 0.0;
    for (int i = 0; i < N; ++i) {
      const cplx term = vals[static_cast<std::size_t>(i)] * std::cos(kPi * ((static_cast<long>(q) * i) % (2 * (N - 1))) / (N - 1));
      s += (i == 0 || i == N - 1) ? 0.5 * term : term;
    }
    b[static_cast<std::size_t>(q)] = (q == 0 ? 1.0 : 2.0) * s / static_cast<double>(N - 1);
  }
  return b;
}

// Parlett-Reinsch balancing by powers of two.
void balance(Eigen::MatrixXcd& A) {
  const Eigen::Index n = A.rows();
  bool done = false;
  for (int sweep = 0; sweep < 100 && !done; ++sweep) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (k == i) continue;
        c += std::abs(A(k, i));
        r += std::abs(A(i, k));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / 2.0) {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c >= r * 2.0) {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if ((c + r) < 0.95 * s) {
        done = false;
        A.row(i) /= f;
        A.col(i) *= f;
      }
    }
  }
}

// Roots in the local variable w of sum_k b_k Phi_k(w), b_n != 0.
std::vector<cplx> frame_roots(const std::vector<cplx>& b, AxisFrame::Kind kind) {
  const auto n = static_cast<Eigen::Index>(b.size()) - 1;
  std::vector<cplx> out;
  if (n <= 0) return out;
  if (kind == AxisFrame::Kind::kPower) {
    // Exact zeros at w = 0 from vanishing low-order coefficients.
    Eigen::Index low = 0;
    while (low < n && b[static_cast<std::size_t>(low)] == cplx{}) ++low;
    for (Eigen::Index i = 0; i < low; ++i) out.emplace_back(0.0);
    const Eigen::Index k = n - low;
    if (k == 0) return out;
    if (k == 1) {
      out.push_back(-b[static_cast<std::size_t>(low)] / b[static_cast<std::size_t>(n)]);
      return out;
    }
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(k, k);
    for (Eigen::Index i = 1; i < k; ++i) C(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      C(i, k - 1) = -b[static_cast<std::size_t>(low + i)] / b[static_cast<std::size_t>(n)];
    }
    balance(C);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    if (es.info() != Eigen::Success) fail(ErrorKind::kRootFailure, "companion eigenvalues failed");
    for (Eigen::Index i = 0; i < k; ++i) out.push_back(es.eigenvalues()(i));
    return out;
  }
  if (n == 1) {
    out.push_back(-b[0] / b[1]);
    return out;
  }
  // Colleague matrix: w T_0 = T_1, w T_k = (T_{k+1} + T_{k-1}) / 2.
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  C(0, 1) = 1.0;
  for (Eigen::Index i = 1; i < n - 1; ++i) {
    C(i, i - 1) = 0.5;
    C(i, i + 1) = 0.5;
  }
  C(n - 1, n - 2) = 0.5;
  for (Eigen::Index k = 0; k < n; ++k) {
    C(n - 1, k) -= 0.5 * b[static_cast<std::size_t>(k)] / b[static_cast<std::size_t>(n)];
  }
  balance(C);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  if (es.info() != Eigen::Success) fail(ErrorKind::kRootFailure, "colleague eigenvalues failed");
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

}  // namespace

std::vector<cplx> frame_expansion(const RandomPolynomial& f) {
  require(f.basis().set().dimension() == 1, "frame expansion of roots is for m = 1");
  if (!f.basis().uses_product_form()) return f.series().frame_coefficients();
  return interpolate_in_frame(f);
}

RootSet roots(const RandomPolynomial& f) {
  require(f.basis().set().dimension() == 1, "roots are computed for m = 1 only");
  RootSet out;
  out.degree = f.degree();
  std::vector<cplx> b = frame_expansion(f);
  double bmax = 0.0;
  for (cplx x : b) bmax = std::max(bmax, std::abs(x));
  std::size_t top = b.size();
  while (top > 1 && std::abs(b[top - 1]) < 1e-12 * bmax) --top;
  b.resize(top);
  out.degree_collapsed = static_cast<int>(top) - 1 < f.degree();

  const AxisFrame axis(f.basis().set().factor(0));
  std::vector<cplx> z = frame_roots(b, axis.kind());
  for (cplx& w : z) w = axis.global(w);

  std::vector<Root> raw;
  for (cplx r : z) {
    cplx d1, d2;
    cplx v = f.evaluate(Point(r), d1, d2);
    for (int step = 0; step < 5 && v != cplx{} && d1 != cplx{}; ++step) {
      const cplx cand = r - v / d1;
      cplx e1, e2;
      const cplx cv = f.evaluate(Point(cand), e1, e2);
      if (!(std::abs(cv) < std::abs(v))) break;
      r = cand;
      v = cv;
      d1 = e1;
      ++out.newton_steps;
    }
    const double scale = f.series().magnitude(Point(r));
    Root root;
    root.z = r;
    root.residual = scale > 0.0 ? std::abs(v) / scale : 0.0;
    if (!(root.residual <= 1e-6)) {
      fail(ErrorKind::kRootFailure, "root residual " + std::to_string(root.residual) +
                                        " exceeds 1e-6 at degree " + std::to_string(f.degree()));
    }
    raw.push_back(root);
  }

  // Cluster within 1e-8 in a deterministic order.
  std::sort(raw.begin(), raw.end(), [](const Root& a, const Root& c) {
    return a.z.real() < c.z.real() || (a.z.real() == c.z.real() && a.z.imag() < c.z.imag());
  });
  std::vector<bool> used(raw.size(), false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    Root merged = raw[i];
    cplx sum = raw[i].z;
    used[i] = true;
    for (std::size_t k = i + 1; k < raw.size(); ++k) {
      if (!used[k] && std::abs(raw[k].z - raw[i].z) <= 1e-8) {
        used[k] = true;
        sum += raw[k].z;
        ++merged.multiplicity;
        merged.residual = std::max(merged.residual, raw[k].residual);
      }
    }
    merged.z = sum / static_cast<double>(merged.multiplicity);
    out.roots.push_back(merged);
    out.n_actual += merged.multiplicity;
  }
  return out;
}

void RootSet::write_csv_header(std::ostream& out) { out << "sample,re,im,multiplicity,residual\n"; }

void RootSet::write_csv(std::ostream& out, std::size_t sample_id) const {
  out.precision(17);
  for (const auto& r : roots) {
    out << sample_id << ',' << r.z.real() << ',' << r.z.imag() << ',' << r.multiplicity << ','
        << r.residual << '\n';
  }
}

EmpiricalMeasure empirical_measure(const RootSet& roots, int n) {
  require(n >= 1, "empirical measure needs n >= 1");
  EmpiricalMeasure m;
  for (const auto& r : roots.roots) {
    m.atoms.push_back({r.z, static_cast<double>(r.multiplicity) / n});
    m.total_mass += static_cast<double>(r.multiplicity) / n;
  }
  m.deficient = roots.n_actual < n;
  return m;
}

}  // namespace chebzero
