#include "chebzero/stats.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <limits>
#include <cmath>
#include <thread>

#include "chebzero/basis_io.hpp"
#include "chebzero/bergman.hpp"
#include "chebzero/currents.hpp"
#include "chebzero/error.hpp"
#include "chebzero/grid.hpp"
#include "chebzero/rng.hpp"
#include "chebzero/zeros.hpp"

namespace chebzero {

using nlohmann::json;

namespace {

// Substream labels; sample draws use (seed, n, index, attempt).
constexpr std::uint64_t kMomentLabel = 0x4d4f4d454e54ull;
constexpr std::uint64_t kSequenceLabel = 0x534551ull;
constexpr std::uint64_t kMeanLabel = 0x4d45414eull;

constexpr double kTrendTolerance = 0.03;
constexpr double kVarianceSlack = 3.0;

// Characteristic length and centre of a one-variable factor.
struct Extent {
  double center = 0.0;
  double scale = 1.0;
  bool interval = false;
};

Extent extent(const SetFactor& f) {
  if (f.kind == FactorKind::kInterval) return {0.5 * (f.a + f.b), 0.5 * (f.b - f.a), true};
  return {0.0, f.radius, false};
}

double mean_of(const std::vector<double>& x) {
  return x.empty() ? 0.0 : pairwise_sum(x) / static_cast<double>(x.size());
}

std::string join_fail(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
  return out;
}

struct BergmanScan {
  double term = 0.0;
  double gamma_max = 0.0;
};

BergmanScan bergman_scan(const Basis& basis, int n, const TestFunction& chi, int points) {
  const CellGrid grid(chi.support_box(), points);
  std::vector<double> terms(grid.total, 0.0);
  double gmax = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < grid.total; ++p) {
    const Point z = point_from_reals(grid.center(p));
    const double g = log_gamma_normalized(basis, n, z);
    gmax = std::max(gmax, g);
    const double l = chi.dd_c(z);
    if (l != 0.0) terms[p] = g * l;
  }
  return {pairwise_sum(terms) * grid.cell_volume(), gmax};
}

const NamedTest& trend_test(const ExperimentPlan& plan) {
  for (const auto& t : plan.tests) {
    if (t.name == "total_mass") return t;
  }
  return plan.tests.front();
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::vector<NamedTest> default_tests(const ModelSet& set) {
  std::vector<NamedTest> out;
  if (set.dimension() == 1) {
    const Extent e = extent(set.factor(0));
    const double c = e.center, h = e.scale;
    const Point origin(cplx(c, 0.0));
    if (e.interval) {
      out.push_back({"total_mass", TestFunction::plateau(origin, 1.2 * h, 1.7 * h, 1.0, 1), 0.05});
      out.push_back({"half_support",
                     TestFunction::slab({c - 1.3 * h, c - 0.1 * h, 0.3 * h, 0.2 * h},
                                        {-0.3 * h, 0.3 * h, 0.3 * h, 0.3 * h}, 1.0),
                     0.05});
      out.push_back({"off_support", TestFunction::bump(Point(cplx(c + 2.5 * h, 0.0)), 0.5 * h, 1.0, 1),
                     0.02});
    } else {
      out.push_back({"total_mass", TestFunction::plateau(origin, 1.5 * h, 2.0 * h, 1.0, 1), 0.05});
      out.push_back({"half_support",
                     TestFunction::slab({-1.3 * h, -0.1 * h, 0.3 * h, 0.2 * h},
                                        {-1.3 * h, 1.3 * h, 0.3 * h, 0.3 * h}, 1.0),
                     0.05});
      out.push_back({"off_support", TestFunction::bump(Point(cplx(3.0 * h, 0.0)), 0.5 * h, 1.0, 1),
                     0.02});
    }
    return out;
  }
  double r = 0.0;
  for (const auto& f : set.factors()) {
    const Extent e = extent(f);
    r = std::max(r, std::abs(e.center) + e.scale);
  }
  out.push_back({"total_mass", TestFunction::plateau(Point(cplx{}, cplx{}), 1.6 * r, 2.4 * r, 1.0, 2),
                 0.05});
  out.push_back({"off_support",
                 TestFunction::bump(Point(cplx(3.0 * r, 0.0), cplx(3.0 * r, 0.0)), 0.5 * r, 1.0, 2),
                 0.02});
  return out;
}

int ExperimentPlan::grid_points() const {
  return grid > 0 ? grid : minimum_points_per_axis(set.dimension());
}

std::string ExperimentPlan::label() const {
  return set.describe() + "/" + to_string(family) + "/" + measure.name();
}

void ExperimentPlan::validate() const {
  require(!degrees.empty(), "plan needs at least one degree");
  require(degrees.front() >= 1, "degrees must be positive");
  for (std::size_t i = 1; i < degrees.size(); ++i) {
    require(degrees[i] > degrees[i - 1], "degrees must be strictly increasing");
  }
  require(samples >= 1, "samples per degree must be at least 1");
  require(!tests.empty(), "plan needs at least one test function");
  for (const auto& t : tests) {
    require(t.chi.dimension() == set.dimension(), "test function '" + t.name + "' has the wrong dimension");
    require(t.tolerance > 0.0, "test tolerances must be positive");
  }
  require(residual_samples >= 0, "residual_samples must be non-negative");
  require(mean_samples >= 1, "mean_samples must be at least 1");
  require(max_retries >= 0, "max_retries must be non-negative");
  require(threads >= 1, "threads must be at least 1");
  require(moment_trials >= 10000, "moment estimates need at least 10^4 trials");
  const int g = grid_points();
  require(g >= minimum_points_per_axis(set.dimension()) && g % 2 == 0,
          "grid must be even and at least the dimension minimum");
  measure.validate();
}

json ExperimentPlan::to_json() const {
  json t = json::array();
  for (const auto& nt : tests) {
    t.push_back({{"name", nt.name}, {"tolerance", nt.tolerance}, {"function", nt.chi.to_json()}});
  }
  return {{"set", set_to_json(set)},
          {"family", to_string(family)},
          {"measure", measure.to_json()},
          {"degrees", degrees},
          {"samples", samples},
          {"tests", t},
          {"seed", seed},
          {"grid", grid_points()},
          {"moment_directions", moment_directions},
          {"moment_trials", moment_trials},
          {"residual_samples", residual_samples},
          {"mean_samples", mean_samples},
          {"max_retries", max_retries}};
}

ExperimentPlan ExperimentPlan::from_json(const json& config) {
  require(config.is_object(), "plan must be an object");
  ExperimentPlan p;
  if (config.contains("set")) p.set = set_from_json(config.at("set"));
  if (config.contains("family")) p.family = basis_family_from_string(config.at("family").get<std::string>());
  if (config.contains("measure")) p.measure = CoefficientMeasure::from_json(config.at("measure"));
  p.degrees = config.value("degrees", p.degrees);
  p.samples = config.value("samples", p.samples);
  p.seed = config.value("seed", p.seed);
  p.grid = config.value("grid", p.grid);
  p.moment_directions = config.value("moment_directions", p.moment_directions);
  p.moment_trials = config.value("moment_trials", p.moment_trials);
  p.residual_samples = config.value("residual_samples", p.residual_samples);
  p.mean_samples = config.value("mean_samples", p.mean_samples);
  p.max_retries = config.value("max_retries", p.max_retries);
  p.threads = config.value("threads", p.threads);
  if (config.contains("tests")) {
    const int m = p.set.dimension();
    const auto defaults = default_tests(p.set);
    for (const auto& t : config.at("tests")) {
      if (t.is_string()) {
        const auto name = t.get<std::string>();
        auto it = std::find_if(defaults.begin(), defaults.end(),
                               [&](const NamedTest& d) { return d.name == name; });
        require(it != defaults.end(), "unknown default test '" + name + "'");
        p.tests.push_back(*it);
        continue;
      }
      NamedTest nt;
      nt.name = t.at("name").get<std::string>();
      nt.tolerance = t.value("tolerance", 0.05);
      nt.chi = TestFunction::from_json(t.at("function"), m);
      p.tests.push_back(std::move(nt));
    }
  } else {
    p.tests = default_tests(p.set);
  }
  p.validate();
  return p;
}

std::vector<ExperimentPlan> default_plans(std::uint64_t seed) {
  std::vector<ExperimentPlan> plans;
  for (const ModelSet& set : {ModelSet::unit_circle(), ModelSet::interval()}) {
    for (BasisFamily family : {BasisFamily::kMinimax, BasisFamily::kLeja}) {
      for (const auto& measure : {CoefficientMeasure::gaussian(), CoefficientMeasure::anisotropic(1.0, 2.0)}) {
        ExperimentPlan p;
        p.set = set;
        p.family = family;
        p.measure = measure;
        p.tests = default_tests(set);
        p.seed = seed;
        plans.push_back(std::move(p));
      }
    }
  }
  return plans;
}

ExperimentPlan default_sequence_plan(std::uint64_t seed) {
  ExperimentPlan p;
  p.set = ModelSet::unit_circle();
  p.family = BasisFamily::kMinimax;
  p.measure = CoefficientMeasure::gaussian();
  p.degrees.clear();
  for (int n = 10; n <= 200; n += 10) p.degrees.push_back(n);
  p.samples = 1;
  p.seed = seed;
  for (auto& t : default_tests(p.set)) {
    if (t.name != "half_support") p.tests.push_back(t);
  }
  return p;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count && !failed.load();) {
      try {
        body(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double bergman_term(const Basis& basis, int n, const TestFunction& chi, int points_per_axis) {
  require(points_per_axis >= minimum_points_per_axis(chi.dimension()),
          "grid below the minimum points per real axis for this dimension");
  return bergman_scan(basis, n, chi, points_per_axis).term;
}

json Check::to_json() const { return {{"name", name}, {"pass", pass}, {"detail", detail}}; }

bool MomentSeries::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const DegreeRecord& MomentSeries::record(int n, const std::string& test) const {
  for (const auto& r : records) {
    if (r.n == n && r.test == test) return r;
  }
  fail(ErrorKind::kInvalidArgument, "no record for n = " + std::to_string(n) + ", test " + test);
}

std::vector<const DegreeRecord*> MomentSeries::for_test(const std::string& test) const {
  std::vector<const DegreeRecord*> out;
  for (const auto& r : records) {
    if (r.test == test) out.push_back(&r);
  }
  return out;
}

json MomentSeries::summary() const {
  json recs = json::array();
  int retries = 0, failures = 0;
  for (const auto& r : records) {
    recs.push_back({{"n", r.n},
                    {"test", r.test},
                    {"samples", r.samples},
                    {"mean", r.mean},
                    {"std_error", r.std_error},
                    {"variance", r.variance},
                    {"variance_se", r.variance_se},
                    {"target", r.target},
                    {"bergman", r.bergman},
                    {"residual", r.residual},
                    {"residual_samples", r.residual_samples},
                    {"moment_constant", r.moment_constant},
                    {"dphi", r.dphi},
                    {"gamma_max", r.gamma_max},
                    {"residual_bound", r.residual_bound},
                    {"mean_bound", r.mean_bound},
                    {"variance_bound", r.variance_bound}});
    if (r.test == plan.tests.front().name) {
      retries += r.tally.retries;
      failures += r.tally.failures;
    }
  }
  json c = json::array();
  for (const auto& ch : checks) c.push_back(ch.to_json());
  return {{"label", label},
          {"plan", plan.to_json()},
          {"records", recs},
          {"checks", c},
          {"retries", retries},
          {"failures", failures},
          {"pass", passed()}};
}

MomentSeries moment_series(const ExperimentPlan& plan, const Basis& basis) {
  plan.validate();
  require(basis.set() == plan.set, "basis was built on a different set");
  require(plan.max_degree() <= basis.max_degree(), "basis degree below the plan's largest degree");
  const int m = plan.set.dimension();
  const int grid = plan.grid_points();
  const std::size_t tests = plan.tests.size();
  const double alpha = plan.alpha();

  std::vector<double> target(tests), dphi(tests);
  for (std::size_t t = 0; t < tests; ++t) {
    target[t] = pair_equilibrium(plan.set, plan.tests[t].chi, grid).value;
    dphi[t] = dphi_constant(plan.tests[t].chi, plan.set, grid);
  }

  MomentSeries series;
  series.label = plan.label();
  series.plan = plan;
  const auto M = static_cast<std::size_t>(plan.samples);
  const std::size_t R = plan.residual_samples == 0 ? M : std::min<std::size_t>(M, static_cast<std::size_t>(plan.residual_samples));
  for (int n : plan.degrees) {
    const std::size_t d = basis.count_for_degree(n);
    const double C = moment_constant(plan.measure, alpha, d, plan.moment_directions, plan.moment_trials,
                                     substream_seed(plan.seed, {kMomentLabel, static_cast<std::uint64_t>(n)}))
                         .value;
    const double c = std::pow(C, 1.0 / alpha);

    std::vector<BergmanScan> scans(tests);
    for (std::size_t t = 0; t < tests; ++t) scans[t] = bergman_scan(basis, n, plan.tests[t].chi, grid);

    std::vector<std::vector<double>> pair(tests, std::vector<double>(M)), resid = pair;
    std::vector<int> ok(M, 0), retries(M, 0);
    parallel_for(M, plan.threads, [&](std::size_t i) {
      for (int attempt = 0; attempt <= plan.max_retries; ++attempt) {
        try {
          auto a = sample(plan.measure, d,
                          substream_seed(plan.seed, {static_cast<std::uint64_t>(n), i,
                                                     static_cast<std::uint64_t>(attempt)}));
          RandomPolynomial f(basis, n, std::move(a));
          std::vector<double> pv(tests), rv(tests);
          if (m == 1) {
            const RootSet r = roots(f);
            for (std::size_t t = 0; t < tests; ++t) pv[t] = pair_atomic(r, n, plan.tests[t].chi).value;
          }
          if (m != 1 || i < R) {
            for (std::size_t t = 0; t < tests; ++t) {
              const double pot = pair_potential(f, n, plan.tests[t].chi, grid, false).value;
              if (m != 1) pv[t] = pot;
              rv[t] = pot - scans[t].term;
            }
          }
          for (std::size_t t = 0; t < tests; ++t) {
            pair[t][i] = pv[t];
            resid[t][i] = rv[t];
          }
          ok[i] = 1;
          retries[i] = attempt;
          return;
        } catch (const Error&) {
        }
      }
      retries[i] = plan.max_retries;
    });

    SampleTally tally;
    for (std::size_t i = 0; i < M; ++i) {
      tally.retries += retries[i];
      tally.failures += ok[i] ? 0 : 1;
    }
    for (std::size_t t = 0; t < tests; ++t) {
      std::vector<double> x, rx;
      for (std::size_t i = 0; i < M; ++i) {
        if (!ok[i]) continue;
        x.push_back(pair[t][i]);
        if (i < R) rx.push_back(resid[t][i]);
      }
      DegreeRecord r;
      r.n = n;
      r.test = plan.tests[t].name;
      r.samples = static_cast<int>(x.size());
      r.tally = tally;
      r.target = target[t];
      r.dphi = dphi[t];
      r.moment_constant = C;
      r.bergman = scans[t].term;
      r.gamma_max = scans[t].gamma_max;
      r.mean = mean_of(x);
      r.residual = mean_of(rx);
      r.residual_samples = static_cast<int>(rx.size());
      const double k = static_cast<double>(x.size());
      if (x.size() >= 2) {
        std::vector<double> dev2(x.size()), dev4(x.size()), sq(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
          const double e = x[i] - r.mean;
          dev2[i] = e * e;
          dev4[i] = e * e * e * e;
          sq[i] = x[i] * x[i];
        }
        r.variance = pairwise_sum(dev2) / (k - 1.0);
        r.variance_one_pass = (pairwise_sum(sq) / k - r.mean * r.mean) * k / (k - 1.0);
        const double m4 = pairwise_sum(dev4) / k;
        const double s4 = r.variance * r.variance;
        r.variance_se = std::sqrt(std::max(0.0, (m4 - s4 * (k - 3.0) / (k - 1.0)) / k));
        r.std_error = std::sqrt(r.variance / k);
      }
      const double D = dphi[t];
      r.residual_bound = c * D / n;
      r.mean_bound = D * (std::max(r.gamma_max, 0.0) + c / n);
      r.variance_terms[0] = D * D;
      r.variance_terms[1] = 2.0 * D * c / n;
      r.variance_terms[2] = D * D * c * c / (static_cast<double>(n) * n);
      r.variance_bound = r.variance_terms[0] + r.variance_terms[1] + r.variance_terms[2];
      series.records.push_back(r);
    }
  }
  return series;
}

void add_expectation_checks(MomentSeries& s) {
  const auto& trend = trend_test(s.plan);
  {
    const auto recs = s.for_test(trend.name);
    int inversions = 0;
    for (std::size_t i = 1; i < recs.size(); ++i) inversions += recs[i]->deviation() > recs[i - 1]->deviation();
    const double last = recs.back()->deviation();
    std::string detail = "|E_n - target| =";
    for (const auto* r : recs) detail += " " + format_double(r->deviation());
    detail += "; inversions " + std::to_string(inversions);
    s.checks.push_back({"expectation_trend:" + trend.name, last < kTrendTolerance && inversions <= 1, detail});
  }
  for (const auto& t : s.plan.tests) {
    std::vector<std::string> bad_res, bad_mean;
    for (const auto* r : s.for_test(t.name)) {
      if (!(std::abs(r->residual) <= r->residual_bound)) {
        bad_res.push_back("n=" + std::to_string(r->n) + " |residual| " + format_double(std::abs(r->residual)) +
                          " > " + format_double(r->residual_bound));
      }
      if (!(std::abs(r->mean) <= r->mean_bound)) {
        bad_mean.push_back("n=" + std::to_string(r->n) + " |E_n| " + format_double(std::abs(r->mean)) + " > " +
                           format_double(r->mean_bound));
      }
    }
    s.checks.push_back({"residual_bound:" + t.name, bad_res.empty(), join_fail(bad_res)});
    s.checks.push_back({"mean_bound:" + t.name, bad_mean.empty(), join_fail(bad_mean)});
  }
}

void add_variance_checks(MomentSeries& s) {
  for (const auto& t : s.plan.tests) {
    std::vector<std::string> bad;
    for (const auto* r : s.for_test(t.name)) {
      if (!(r->variance <= r->variance_bound + kVarianceSlack * r->variance_se)) {
        bad.push_back("n=" + std::to_string(r->n) + " var " + format_double(r->variance) + " > " +
                      format_double(r->variance_bound));
      }
    }
    s.checks.push_back({"variance_bound:" + t.name, bad.empty(), join_fail(bad)});
  }
  const auto& trend = trend_test(s.plan);
  const auto recs = s.for_test(trend.name);
  const double first = recs.front()->variance, last = recs.back()->variance;
  s.checks.push_back({"variance_decay:" + trend.name, recs.size() < 2 || last < first,
                      "Var first " + format_double(first) + ", last " + format_double(last)});
}

MomentSeries expectation_experiment(const ExperimentPlan& plan, const Basis& basis) {
  MomentSeries s = moment_series(plan, basis);
  add_expectation_checks(s);
  return s;
}

MomentSeries variance_experiment(const ExperimentPlan& plan, const Basis& basis) {
  require(plan.samples >= 50, "variance experiment needs at least 50 samples per degree");
  MomentSeries s = moment_series(plan, basis);
  add_variance_checks(s);
  return s;
}

namespace {

void write_prefix(std::ostream& out, const ExperimentPlan& p, const std::string& test) {
  out << p.set.describe() << ',' << to_string(p.family) << ',' << p.measure.name() << ',' << test;
}

}  // namespace

void write_expectation_csv(std::ostream& out, const std::vector<MomentSeries>& all) {
  out << "set,family,measure,test,n,samples,mean,std_error,target,deviation,bergman,residual,"
         "moment_constant,dphi,residual_bound,mean_bound,retries,failures\n";
  for (const auto& s : all) {
    for (const auto& r : s.records) {
      write_prefix(out, s.plan, r.test);
      out << ',' << r.n << ',' << r.samples;
      for (double v : {r.mean, r.std_error, r.target, r.deviation(), r.bergman, r.residual, r.moment_constant,
                       r.dphi, r.residual_bound, r.mean_bound}) {
        out << ',' << format_double(v);
      }
      out << ',' << r.tally.retries << ',' << r.tally.failures << '\n';
    }
  }
}

void write_variance_csv(std::ostream& out, const std::vector<MomentSeries>& all) {
  out << "set,family,measure,test,n,samples,variance,variance_one_pass,variance_se,moment_constant,dphi,"
         "term_dphi2,term_cross,term_tail,variance_bound,retries,failures\n";
  for (const auto& s : all) {
    for (const auto& r : s.records) {
      write_prefix(out, s.plan, r.test);
      out << ',' << r.n << ',' << r.samples;
      for (double v : {r.variance, r.variance_one_pass, r.variance_se, r.moment_constant, r.dphi,
                       r.variance_terms[0], r.variance_terms[1], r.variance_terms[2], r.variance_bound}) {
        out << ',' << format_double(v);
      }
      out << ',' << r.tally.retries << ',' << r.tally.failures << '\n';
    }
  }
}

bool SequenceTrace::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

json SequenceTrace::summary() const {
  json pts = json::array();
  for (const auto& p : points) {
    pts.push_back({{"n", p.n},
                   {"test", p.test},
                   {"pairing", p.pairing},
                   {"target", p.target},
                   {"mean_estimate", p.mean_estimate},
                   {"partial_sum", p.partial_sum}});
  }
  json c = json::array();
  for (const auto& ch : checks) c.push_back(ch.to_json());
  return {{"label", label}, {"plan", plan.to_json()}, {"trace", pts}, {"checks", c}, {"pass", passed()}};
}

SequenceTrace sequence_experiment(const ExperimentPlan& plan, const Basis& basis) {
  plan.validate();
  require(basis.set() == plan.set, "basis was built on a different set");
  require(plan.max_degree() <= basis.max_degree(), "basis degree below the plan's largest degree");
  const int m = plan.set.dimension();
  const int grid = plan.grid_points();
  const std::size_t tests = plan.tests.size();
  std::vector<double> target(tests);
  for (std::size_t t = 0; t < tests; ++t) target[t] = pair_equilibrium(plan.set, plan.tests[t].chi, grid).value;

  // Pairings of one draw on substream (label, n, index, attempt), redrawn on failure.
  auto pair_sample = [&](int n, std::uint64_t label, std::uint64_t index, int& retries) {
    const std::size_t d = basis.count_for_degree(n);
    for (int attempt = 0; attempt <= plan.max_retries; ++attempt) {
      try {
        auto a = sample(plan.measure, d,
                        substream_seed(plan.seed, {label, static_cast<std::uint64_t>(n), index,
                                                   static_cast<std::uint64_t>(attempt)}));
        RandomPolynomial f(basis, n, std::move(a));
        std::vector<double> v(tests);
        if (m == 1) {
          const RootSet r = roots(f);
          for (std::size_t t = 0; t < tests; ++t) v[t] = pair_atomic(r, n, plan.tests[t].chi).value;
        } else {
          for (std::size_t t = 0; t < tests; ++t) v[t] = pair_potential(f, n, plan.tests[t].chi, grid, false).value;
        }
        retries += attempt;
        return v;
      } catch (const Error&) {
      }
    }
    fail(ErrorKind::kRootFailure, "sequence sample at n = " + std::to_string(n) + " failed after retries");
  };

  const std::size_t K = plan.degrees.size();
  std::vector<std::vector<double>> value(K), mean(K);
  std::vector<int> retries(K, 0);
  parallel_for(K, plan.threads, [&](std::size_t k) {
    const int n = plan.degrees[k];
    value[k] = pair_sample(n, kSequenceLabel, 0, retries[k]);
    std::vector<std::vector<double>> aux(tests);
    for (int i = 0; i < plan.mean_samples; ++i) {
      int r = 0;
      const auto v = pair_sample(n, kMeanLabel, static_cast<std::uint64_t>(i), r);
      for (std::size_t t = 0; t < tests; ++t) aux[t].push_back(v[t]);
    }
    mean[k].resize(tests);
    for (std::size_t t = 0; t < tests; ++t) mean[k][t] = mean_of(aux[t]);
  });

  SequenceTrace trace;
  trace.label = plan.label();
  trace.plan = plan;
  std::vector<double> partial(tests, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t t = 0; t < tests; ++t) {
      TracePoint p;
      p.n = plan.degrees[k];
      p.test = plan.tests[t].name;
      p.pairing = value[k][t];
      p.target = target[t];
      p.mean_estimate = mean[k][t];
      partial[t] += (p.pairing - p.mean_estimate) * (p.pairing - p.mean_estimate);
      p.partial_sum = partial[t];
      p.retries = retries[k];
      trace.points.push_back(p);
    }
  }
  const std::size_t quarter = std::max<std::size_t>(1, (K + 3) / 4);
  for (std::size_t t = 0; t < tests; ++t) {
    double worst = 0.0;
    for (std::size_t k = K - quarter; k < K; ++k) worst = std::max(worst, trace.points[k * tests + t].deviation());
    trace.checks.push_back({"trace:" + plan.tests[t].name, worst < plan.tests[t].tolerance,
                            "last-quarter max deviation " + format_double(worst) + ", tolerance " +
                                format_double(plan.tests[t].tolerance)});
  }
  return trace;
}

void write_sequence_csv(std::ostream& out, const SequenceTrace& trace) {
  out << "set,family,measure,test,n,pairing,target,deviation,mean_estimate,partial_sum,retries\n";
  for (const auto& p : trace.points) {
    write_prefix(out, trace.plan, p.test);
    out << ',' << p.n;
    for (double v : {p.pairing, p.target, p.deviation(), p.mean_estimate, p.partial_sum}) out << ',' << format_double(v);
    out << ',' << p.retries << '\n';
  }
}

}  // namespace chebzero
