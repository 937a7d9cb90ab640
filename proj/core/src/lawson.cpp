#include "lawson.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chebzero/error.hpp"

namespace chebzero::detail {
namespace {

// Returns true when the grid maximum has settled.
bool settled(const std::vector<double>& history, double tolerance) {
  if (history.size() < 2) return false;
  const double now = history.back();
  const double before = history[history.size() - 2];
  return std::abs(now - before) <= tolerance * now;
}

void update_weights(std::vector<double>& w, const std::vector<double>& abs_residual,
                    double damping) {
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] *= std::pow(abs_residual[i], damping);
    total += w[i];
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    fail(ErrorKind::kRankDeficiency, "Lawson weights collapsed to zero");
  }
  for (double& x : w) x /= total;
}

// Classical Lawson converges only sublinearly once the optimal weights
// concentrate on n + 1 grid points, because neighbours of each extremum keep
// residual ratios close to 1. A few sweeps locate the alternation set; a
// discrete exchange on the same grid then finishes in a handful of steps.
constexpr int kLawsonSweeps = 40;

// r(x_i) = T_n + sum_{k<n} c_k T_k at x_i = cos(theta_i).
void chebyshev_residual(const std::vector<double>& theta, const std::vector<double>& c,
                        std::size_t n, std::vector<double>& r) {
  r.assign(theta.size(), 0.0);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double x = std::cos(theta[i]);
    // Clenshaw on the full coefficient vector (c_0..c_{n-1}, 1).
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = n + 1; k-- > 1;) {
      const double ck = k == n ? 1.0 : c[k];
      const double b0 = ck + 2.0 * x * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    r[i] = c[0] + x * b1 - b2;
  }
}

// Extremum of each maximal constant-sign run, trimmed to n + 1 alternating
// points by dropping the smaller end.
std::vector<std::size_t> alternation_reference(const std::vector<double>& r, std::size_t n) {
  std::vector<std::size_t> ref;
  int sign = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const int si = r[i] > 0.0 ? 1 : (r[i] < 0.0 ? -1 : sign);
    if (si == 0) continue;
    if (si != sign || ref.empty()) {
      ref.push_back(i);
      sign = si;
    } else if (std::abs(r[i]) > std::abs(r[ref.back()])) {
      ref.back() = i;
    }
  }
  while (ref.size() > n + 1) {
    if (std::abs(r[ref.front()]) < std::abs(r[ref.back()])) {
      ref.erase(ref.begin());
    } else {
      ref.pop_back();
    }
  }
  return ref;
}

bool exchange_polish(const std::vector<double>& theta,
                     const std::vector<double>& start, std::size_t n,
                     const MinimaxOptions& options, LawsonOutcome& out,
                     std::vector<double>& coefficients) {
  std::vector<double> r = start;
  std::vector<double> c(n, 0.0);
  const auto nn = static_cast<Eigen::Index>(n + 1);
  for (int it = out.iterations + 1; it <= options.max_iters; ++it) {
    const auto ref = alternation_reference(r, n);
    if (ref.size() != n + 1) return false;
    // sum_{k<n} c_k T_k(x_i) + (-1)^i h = -T_n(x_i)
    Eigen::MatrixXd A(nn, nn);
    Eigen::VectorXd b(nn);
    for (Eigen::Index i = 0; i < nn; ++i) {
      const double t = theta[ref[static_cast<std::size_t>(i)]];
      for (Eigen::Index k = 0; k < nn - 1; ++k) A(i, k) = std::cos(static_cast<double>(k) * t);
      A(i, nn - 1) = (i % 2 == 0) ? 1.0 : -1.0;
      b(i) = -std::cos(static_cast<double>(n) * t);
    }
    const Eigen::VectorXd sol = A.partialPivLu().solve(b);
    if (!sol.allFinite()) return false;
    for (std::size_t k = 0; k < n; ++k) c[k] = sol(static_cast<Eigen::Index>(k));
    chebyshev_residual(theta, c, n, r);
    double emax = 0.0;
    for (double ri : r) emax = std::max(emax, std::abs(ri));
    // Monic in w: T_n has leading coefficient 2^{n-1}.
    const double to_monic = std::ldexp(1.0, 1 - static_cast<int>(n));
    out.grid_max_history.push_back(emax * to_monic);
    out.iterations = it;
    const double level = std::abs(sol(nn - 1));
    if (settled(out.grid_max_history, options.tolerance) ||
        emax - level <= options.tolerance * emax) {
      out.converged = true;
      coefficients.assign(c.begin(), c.end());
      coefficients.push_back(1.0);
      return true;
    }
  }
  return false;
}

}  // namespace

LawsonOutcome lawson_interval(int grid_size, int degree, const MinimaxOptions& options) {
  const auto N = static_cast<std::size_t>(grid_size);
  const auto n = static_cast<std::size_t>(degree);
  // Ascending CGL nodes w_i = cos(theta_i), theta_i = pi (N-1-i)/(N-1).
  std::vector<double> theta(N), x(N);
  for (std::size_t i = 0; i < N; ++i) {
    theta[i] = kPi * static_cast<double>(N - 1 - i) / static_cast<double>(N - 1);
    x[i] = std::cos(theta[i]);
  }
  x.front() = -1.0;
  x.back() = 1.0;

  LawsonOutcome out;
  std::vector<double> w(N, 1.0 / static_cast<double>(N));
  std::vector<double> q_prev(N), q(N), v(N), abs_r(N);
  const int sweeps = std::min(options.max_iters, kLawsonSweeps);

  for (int it = 1; it <= sweeps; ++it) {
    // Stieltjes/Lanczos for the discrete measure sum w_i delta_{x_i}:
    // orthonormal q_k with q_{k+1} beta_{k+1} = (x - alpha_k) q_k - beta_k q_{k-1}.
    double total = std::accumulate(w.begin(), w.end(), 0.0);
    std::fill(q_prev.begin(), q_prev.end(), 0.0);
    std::fill(q.begin(), q.end(), 1.0 / std::sqrt(total));
    double log_norm = 0.5 * std::log(total);  // log ||pi_k||_w, pi_k monic
    double beta = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < N; ++i) v[i] = x[i] * q[i] - beta * q_prev[i];
      for (int pass = 0; pass < 2; ++pass) {
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
          a += w[i] * v[i] * q[i];
          b += w[i] * v[i] * q_prev[i];
        }
        for (std::size_t i = 0; i < N; ++i) v[i] -= a * q[i] + b * q_prev[i];
      }
      double nrm = 0.0;
      for (std::size_t i = 0; i < N; ++i) nrm += w[i] * v[i] * v[i];
      nrm = std::sqrt(nrm);
      if (!(nrm > 1e-300)) {
        fail(ErrorKind::kRankDeficiency,
             "weighted normal system is singular: weights support fewer points than the degree");
      }
      beta = nrm;
      log_norm += std::log(nrm);
      for (std::size_t i = 0; i < N; ++i) {
        q_prev[i] = q[i];
        q[i] = v[i] / nrm;
      }
    }
    // pi_n = q_n * ||pi_n||_w since ||q_n||_w = 1.
    double qmax = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      abs_r[i] = std::abs(q[i]);
      qmax = std::max(qmax, abs_r[i]);
    }
    out.weighted_l2_history.push_back(std::exp(log_norm));
    out.grid_max_history.push_back(qmax * std::exp(log_norm));
    out.iterations = it;
    if (settled(out.grid_max_history, options.tolerance)) {
      out.converged = true;
      break;
    }
    if (it < sweeps) update_weights(w, abs_r, options.damping);
  }

  if (!out.converged && out.iterations < options.max_iters) {
    std::vector<double> c;
    if (exchange_polish(theta, q, n, options, out, c)) {
      out.coefficients.assign(c.begin(), c.end());
      out.weights = std::move(w);
      return out;
    }
  }

  // Chebyshev coefficients of the final iterate by the DCT-I on the CGL grid;
  // exact because degree < N - 1.
  std::vector<cplx> c(n + 1);
  const double denom = static_cast<double>(N - 1);
  for (std::size_t k = 0; k <= n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double term = q[i] * std::cos(static_cast<double>(k) * theta[i]);
      s += (i == 0 || i == N - 1) ? 0.5 * term : term;
    }
    c[k] = (k == 0 ? 1.0 : 2.0) * s / denom;
  }
  const cplx lead = c[n];
  for (auto& ck : c) ck /= lead;
  c[n] = 1.0;
  out.coefficients = std::move(c);
  out.weights = std::move(w);
  return out;
}

LawsonOutcome lawson_circle(int grid_size, int degree, const MinimaxOptions& options) {
  const auto N = static_cast<std::size_t>(grid_size);
  const auto n = static_cast<std::size_t>(degree);
  const std::vector<cplx> nodes = boundary_sample(SetFactor::circle(1.0), grid_size);

  LawsonOutcome out;
  std::vector<double> w(N, 1.0 / static_cast<double>(N));
  std::vector<cplx> phi(N), phi_star(N), next(N);
  std::vector<double> abs_r(N);

  for (int it = 1; it <= options.max_iters; ++it) {
    // Szego recurrence for monic orthogonal polynomials on the circle.
    std::fill(phi.begin(), phi.end(), cplx(1.0));
    std::fill(phi_star.begin(), phi_star.end(), cplx(1.0));
    for (std::size_t k = 0; k < n; ++k) {
      cplx num = 0.0, den_c = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        num += w[i] * nodes[i] * phi[i];
        den_c += w[i] * phi_star[i];
      }
      // <Phi*_k, 1>_w equals ||Phi_k||^2_w; the imaginary part is rounding.
      const double den = std::real(den_c);
      if (!(den > 1e-300)) {
        fail(ErrorKind::kRankDeficiency, "weighted normal system is singular on the circle grid");
      }
      const cplx conj_a = num / den;
      const cplx a = std::conj(conj_a);
      for (std::size_t i = 0; i < N; ++i) {
        const cplx zphi = nodes[i] * phi[i];
        next[i] = zphi - conj_a * phi_star[i];
        phi_star[i] = phi_star[i] - a * zphi;
      }
      phi.swap(next);
    }
    double emax = 0.0, l2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      abs_r[i] = std::abs(phi[i]);
      emax = std::max(emax, abs_r[i]);
      l2 += w[i] * abs_r[i] * abs_r[i];
    }
    out.weighted_l2_history.push_back(std::sqrt(l2));
    out.grid_max_history.push_back(emax);
    out.iterations = it;
    if (settled(out.grid_max_history, options.tolerance)) {
      out.converged = true;
      break;
    }
    if (it < options.max_iters) update_weights(w, abs_r, options.damping);
  }

  std::vector<cplx> c(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      // conj(node)^k via the node index keeps the twiddles exact at quarter turns.
      const std::size_t idx = (N - (i * k) % N) % N;
      s += phi[i] * nodes[idx];
    }
    c[k] = s / static_cast<double>(N);
  }
  const cplx lead = c[n];
  for (auto& ck : c) ck /= lead;
  c[n] = 1.0;
  out.coefficients = std::move(c);
  out.weights = std::move(w);
  return out;
}

LawsonOutcome lawson_dense(const Eigen::MatrixXcd& lower, const Eigen::VectorXcd& leading,
                           const MinimaxOptions& options) {
  const Eigen::Index N = lower.rows();
  const Eigen::Index p = lower.cols();
  LawsonOutcome out;
  std::vector<double> w(static_cast<std::size_t>(N), 1.0 / static_cast<double>(N));
  std::vector<double> abs_r(static_cast<std::size_t>(N));
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(p);
  Eigen::VectorXcd r = leading;

  for (int it = 1; it <= options.max_iters; ++it) {
    if (p > 0) {
      Eigen::VectorXd sw(N);
      for (Eigen::Index i = 0; i < N; ++i) sw(i) = std::sqrt(w[static_cast<std::size_t>(i)]);
      const Eigen::MatrixXcd A = sw.asDiagonal() * lower;
      const Eigen::VectorXcd b = sw.asDiagonal() * leading;
      // Normal equations through a Cholesky factor; the frame columns are well
      // conditioned on the boundary grid. Householder QR is the fallback.
      const Eigen::MatrixXcd G = A.adjoint() * A;
      const Eigen::LLT<Eigen::MatrixXcd> llt(G);
      const auto d = G.diagonal().real();
      bool ok = llt.info() == Eigen::Success;
      if (ok) {
        const auto L = llt.matrixL().toDenseMatrix().diagonal().cwiseAbs2();
        ok = L.minCoeff() > 1e-10 * d.maxCoeff();
      }
      if (ok) {
        c = -llt.solve(A.adjoint() * b);
      } else {
        const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
        const auto R = qr.matrixQR().diagonal().cwiseAbs();
        if (!(R.minCoeff() > 1e-13 * R.maxCoeff())) {
          fail(ErrorKind::kRankDeficiency, "weighted least-squares system is rank deficient");
        }
        c = -qr.solve(b);
      }
      r = leading + lower * c;
    }
    double emax = 0.0, l2 = 0.0;
    for (Eigen::Index i = 0; i < N; ++i) {
      const double a = std::abs(r(i));
      abs_r[static_cast<std::size_t>(i)] = a;
      emax = std::max(emax, a);
      l2 += w[static_cast<std::size_t>(i)] * a * a;
    }
    out.weighted_l2_history.push_back(std::sqrt(l2));
    out.grid_max_history.push_back(emax);
    out.iterations = it;
    // sqrt(l2) is a lower bound for the discrete minimax value because the
    // weights sum to one, so a small gap certifies near-optimality.
    if (p == 0 || settled(out.grid_max_history, options.tolerance) ||
        emax - std::sqrt(l2) <= options.gap_tolerance * emax) {
      out.converged = true;
      break;
    }
    if (it < options.max_iters) update_weights(w, abs_r, options.damping);
  }
  out.coefficients.assign(c.data(), c.data() + p);
  out.coefficients.push_back(1.0);
  out.weights = std::move(w);
  return out;
}

}  // namespace chebzero::detail
