// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chebzero/bergman.hpp"
#include "chebzero/chebyshev.hpp"
#include "chebzero/currents.hpp"
#include "chebzero/ensemble.hpp"
#include "chebzero/rng.hpp"
#include "chebzero/stats.hpp"
#include "lp_oracle.hpp"

using namespace chebzero;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d %s: %s [%.1f s] %s\n", id, o.pass ? "PASS" : "FAIL", name.c_str(), seconds_since(t0),
              o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// Shared bases, built once.
struct Bases {
  Basis circle_minimax = minimax_basis(ModelSet::unit_circle(), 200);
  Basis circle_leja = leja_basis(ModelSet::unit_circle(), 160);
  Basis interval_minimax = minimax_basis(ModelSet::interval(), 160);
  Basis interval_leja = leja_basis(ModelSet::interval(), 160);

  const Basis& get(const ModelSet& set, BasisFamily family) const {
    const bool circle = set == ModelSet::unit_circle();
    if (family == BasisFamily::kMinimax) return circle ? circle_minimax : interval_minimax;
    return circle ? circle_leja : interval_leja;
  }
};

Outcome minimax_oracle() {
  const auto t0 = Clock::now();
  double worst_closed = 0.0, worst_lp = 0.0;
  const MultiIndexTable table(1, 12);
  for (int n = 1; n <= 12; ++n) {
    const auto r = minimax_monic(ModelSet::interval(), table, static_cast<std::size_t>(n));
    worst_closed = std::max(worst_closed, std::abs(r.sup_norm / std::ldexp(1.0, 1 - n) - 1.0));
  }
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  std::uniform_int_distribution<int> deg(1, 12);
  for (int c = 0; c < 20; ++c) {
    const int n = deg(rng);
    double ours, lp;
    if (c % 2 == 0) {
      const double a = -u(rng), b = u(rng);
      ours = minimax_monic(ModelSet::interval(a, b), table, static_cast<std::size_t>(n)).sup_norm;
      lp = oracle::interval_minimax(a, b, n, 27721);
    } else {
      const double r = u(rng);
      ours = minimax_monic(ModelSet(SetFactor::circle(r)), table, static_cast<std::size_t>(n)).sup_norm;
      lp = oracle::circle_minimax(r, n);
    }
    worst_lp = std::max(worst_lp, std::abs(ours / lp - 1.0));
  }
  const double t = seconds_since(t0);
  return {worst_closed < 1e-6 && worst_lp < 1e-6 && t < 60.0,
          "max rel error vs 2^(1-n) " + fmt(worst_closed) + ", vs LP (20 cases) " + fmt(worst_lp) + ", time " +
              fmt(t) + " s"};
}

Outcome bergman_convergence(const Bases& b) {
  const Box box = Box::centered(1, 2.0);
  const std::vector<int> degrees{8, 16, 32, 64, 128};
  std::vector<double> err;
  double worst_point = 0.0;
  for (int n : degrees) {
    const auto field = bergman_field(b.circle_minimax, n, box, 257);
    err.push_back(field.l1_error);
    // Gamma_n(z) = sum_{j <= n} |z|^{2j} for the monomial basis.
    for (std::size_t i = 0; i < field.normalized.size(); i += 97) {
      const cplx z(field.coordinates[i][0], field.coordinates[i][1]);
      const double r2 = std::norm(z);
      const double direct = std::abs(r2 - 1.0) < 1e-12
                                ? std::log(n + 1.0)
                                : (r2 < 1.0 ? std::log1p(-std::pow(r2, n + 1)) - std::log1p(-r2)
                                            : (n + 1) * std::log(r2) + std::log1p(-std::pow(r2, -(n + 1))) -
                                                  std::log(r2 - 1.0));
      worst_point = std::max(worst_point, std::abs(field.normalized[i] - direct / (2.0 * n)));
    }
  }
  bool monotone = true;
  for (std::size_t i = 1; i < err.size(); ++i) monotone = monotone && err[i] < err[i - 1];
  std::string detail = "l1 errors";
  for (double e : err) detail += " " + fmt(e);
  detail += "; monotone " + std::string(monotone ? "yes" : "no") + "; need < 0.02 at n=128; pointwise " +
            fmt(worst_point);
  return {monotone && err.back() < 0.02 && worst_point < 1e-10, detail};
}

Outcome poincare_lelong(const Bases& b) {
  const std::vector<const Basis*> bases{&b.circle_minimax, &b.interval_minimax, &b.circle_leja};
  const int degrees[] = {10, 20, 40};
  const int total = 50;
  int agree = 0;
  double worst = 0.0;
  for (int i = 0; i < total; ++i) {
    const Basis& basis = *bases[static_cast<std::size_t>(i % 3)];
    const int n = degrees[(i / 3) % 3];
    const auto a = sample(CoefficientMeasure::gaussian(), basis.count_for_degree(n),
                          substream_seed(20240601, {3, static_cast<std::uint64_t>(i)}));
    const RandomPolynomial f(basis, n, a);
    const RootSet rs = roots(f);
    bool ok = true;
    for (const auto& t : default_tests(basis.set())) {
      const auto atomic = pair_atomic(rs, n, t.chi);
      const auto pot = pair_potential(f, n, t.chi, 256);
      const double gap = std::abs(atomic.value - pot.value);
      worst = std::max(worst, gap);
      ok = ok && gap <= std::max(1e-2, 3.0 * pot.error_estimate);
    }
    agree += ok;
  }
  const double frac = static_cast<double>(agree) / total;
  return {frac >= 0.98, std::to_string(agree) + "/" + std::to_string(total) + " samples agree; largest gap " +
                            fmt(worst)};
}

Outcome moment_constant_check() {
  const auto t0 = Clock::now();
  const std::vector<cplx> e1{cplx(1.0, 0.0)};
  const auto est = moment_estimate(CoefficientMeasure::gaussian(), 2.0, e1, 1000000, 41);
  const double closed = gaussian_log_moment();
  const bool close = std::abs(est.estimate - closed) <= 3.0 * est.standard_error;
  const auto c = moment_constant(CoefficientMeasure::gaussian(), 2.0, 21, 32, 1000000, 42);
  double lo = c.per_direction.front().estimate, hi = lo;
  for (const auto& e : c.per_direction) {
    lo = std::min(lo, e.estimate);
    hi = std::max(hi, e.estimate);
  }
  const double spread = (hi - lo) / hi;
  const double t = seconds_since(t0);
  return {close && spread < 0.05 && t < 60.0, "estimate " + fmt(est.estimate) + " vs " + fmt(closed) + " (SE " +
                                                  fmt(est.standard_error) + "), spread over " +
                                                  std::to_string(c.per_direction.size()) + " directions " +
                                                  fmt(spread)};
}

struct PlanRun {
  std::vector<MomentSeries> expectation, variance;
  std::string files;  // expect.csv, variance.csv and both summaries, concatenated
};

PlanRun run_default_plans(const Bases& b) {
  PlanRun out;
  for (const auto& plan : default_plans()) {
    const MomentSeries s = moment_series(plan, b.get(plan.set, plan.family));
    MomentSeries e = s, v = s;
    add_expectation_checks(e);
    add_variance_checks(v);
    out.expectation.push_back(std::move(e));
    out.variance.push_back(std::move(v));
  }
  std::ostringstream files;
  write_expectation_csv(files, out.expectation);
  write_variance_csv(files, out.variance);
  for (const auto& s : out.expectation) files << s.summary().dump(2) << '\n';
  for (const auto& s : out.variance) files << s.summary().dump(2) << '\n';
  out.files = files.str();
  return out;
}

Outcome checks_with_prefix(const std::vector<MomentSeries>& all, const std::string& prefix, bool circle_only) {
  int total = 0, passed = 0;
  std::string detail;
  for (const auto& s : all) {
    if (circle_only && !(s.plan.set == ModelSet::unit_circle())) continue;
    for (const auto& c : s.checks) {
      if (c.name.rfind(prefix, 0) != 0) continue;
      ++total;
      passed += c.pass;
      if (!c.pass || prefix == "expectation_trend") detail += " [" + s.label + " " + c.name + ": " + c.detail + "]";
    }
  }
  return {total > 0 && passed == total, std::to_string(passed) + "/" + std::to_string(total) + " checks" + detail};
}

Outcome almost_sure_trace(const Bases& b) {
  const auto t = sequence_experiment(default_sequence_plan(), b.circle_minimax);
  std::string detail;
  for (const auto& c : t.checks) detail += " [" + c.name + ": " + c.detail + "]";
  return {t.passed(), detail};
}

}  // namespace

int main() {
  std::printf("building shared bases...\n");
  std::fflush(stdout);
  const auto t0 = Clock::now();
  const Bases bases;
  std::printf("bases ready [%.1f s]\n", seconds_since(t0));

  report(1, "minimax oracle", minimax_oracle);
  report(2, "Bergman convergence", [&] { return bergman_convergence(bases); });
  report(3, "atomic vs potential pairing", [&] { return poincare_lelong(bases); });
  report(4, "Gaussian moment constant", moment_constant_check);

  PlanRun first, second;
  double first_seconds = 0.0;
  {
    const auto t = Clock::now();
    first = run_default_plans(bases);
    first_seconds = seconds_since(t);
  }
  report(5, "expected distribution on the circle", [&] {
    auto o = checks_with_prefix(first.expectation, "expectation_trend", true);
    o.detail += " (default plan run " + fmt(first_seconds) + " s)";
    return o;
  });
  report(6, "residual bound", [&] { return checks_with_prefix(first.expectation, "residual_bound", false); });
  report(7, "variance bound and decay", [&] {
    const auto bound = checks_with_prefix(first.variance, "variance_bound", false);
    const auto decay = checks_with_prefix(first.variance, "variance_decay", false);
    return Outcome{bound.pass && decay.pass, "bound " + bound.detail + "; decay " + decay.detail};
  });
  report(8, "almost-sure trace", [&] { return almost_sure_trace(bases); });
  report(9, "determinism", [&] {
    second = run_default_plans(bases);
    const bool same = first.files == second.files;
    return Outcome{same, std::to_string(first.files.size()) + " bytes of CSV/JSON, identical: " + (same ? "yes" : "no")};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
