#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <map>
#include <sstream>

#include "chebzero/basis_io.hpp"
#include "chebzero/bergman.hpp"
#include "chebzero/chebyshev.hpp"
#include "chebzero/ensemble.hpp"
#include "chebzero/error.hpp"
#include "chebzero/grid.hpp"
#include "chebzero/stats.hpp"

namespace chebzero::cli {

using nlohmann::json;

namespace {

MinimaxOptions minimax_options(const json& cfg) {
  MinimaxOptions o;
  if (!cfg.contains("minimax")) return o;
  const auto& m = cfg.at("minimax");
  o.grid_size = m.value("grid_size", o.grid_size);
  o.max_iters = m.value("max_iters", o.max_iters);
  o.damping = m.value("damping", o.damping);
  o.tolerance = m.value("tolerance", o.tolerance);
  o.gap_tolerance = m.value("gap_tolerance", o.gap_tolerance);
  return o;
}

// {"set", "family", "degree"} built inline, or a path to a basis file.
Basis basis_from_config(const json& config) {
  if (config.is_string()) return read_basis(config.get<std::string>());
  require(config.is_object(), "'basis' must be a file path or an inline config");
  const int n = config.at("degree").get<int>();
  require(n >= 0, "basis degree must be non-negative");
  return build_basis(set_from_json(config.at("set")), basis_family_from_string(config.value("family", "minimax")), n,
                     minimax_options(config));
}

void apply(ExperimentPlan& p, const Overrides& o) {
  if (o.seed) p.seed = *o.seed;
  if (o.threads) p.threads = *o.threads;
}

std::vector<ExperimentPlan> plans_from_config(const json& cfg, const Overrides& o) {
  std::vector<ExperimentPlan> plans;
  if (cfg.is_null() || cfg.empty() || cfg.value("default_plan", false)) {
    plans = default_plans();
  } else if (cfg.contains("plans")) {
    for (const auto& p : cfg.at("plans")) plans.push_back(ExperimentPlan::from_json(p));
  } else {
    plans.push_back(ExperimentPlan::from_json(cfg));
  }
  for (auto& p : plans) apply(p, o);
  return plans;
}

// One basis per (set, family), built to the largest degree any plan needs.
class BasisCache {
 public:
  explicit BasisCache(const json& cfg) : cfg_(cfg) {}

  const Basis& get(const ExperimentPlan& p, int degree) {
    const std::string key = p.set.describe() + "/" + to_string(p.family);
    auto it = cache_.find(key);
    if (it == cache_.end() || it->second.max_degree() < degree) {
      if (cfg_.contains("basis")) {
        Basis b = basis_from_config(cfg_.at("basis"));
        require(b.set() == p.set && b.family() == p.family, "basis file does not match the plan");
        it = cache_.insert_or_assign(key, std::move(b)).first;
      } else {
        it = cache_.insert_or_assign(key, build_basis(p.set, p.family, degree, minimax_options(cfg_))).first;
      }
    }
    return it->second;
  }

 private:
  json cfg_;
  std::map<std::string, Basis> cache_;
};

std::map<std::string, int> max_degrees(const std::vector<ExperimentPlan>& plans) {
  std::map<std::string, int> out;
  for (const auto& p : plans) {
    int& d = out[p.set.describe() + "/" + to_string(p.family)];
    d = std::max(d, p.max_degree());
  }
  return out;
}

int run_moments(RunContext& ctx, const Overrides& o, bool variance) {
  const auto plans = plans_from_config(ctx.config(), o);
  if (!plans.empty()) ctx.set_seed(plans.front().seed);
  const auto degrees = max_degrees(plans);
  BasisCache cache(ctx.config());
  std::vector<MomentSeries> all;
  json summaries = json::array();
  bool pass = true;
  for (const auto& p : plans) {
    const Basis& b = cache.get(p, degrees.at(p.set.describe() + "/" + to_string(p.family)));
    MomentSeries s = variance ? variance_experiment(p, b) : expectation_experiment(p, b);
    pass = pass && s.passed();
    std::cerr << s.label << ": " << (s.passed() ? "PASS" : "FAIL") << '\n';
    summaries.push_back(s.summary());
    all.push_back(std::move(s));
  }
  std::ostringstream csv;
  const std::string stem = variance ? "variance" : "expect";
  if (variance) {
    write_variance_csv(csv, all);
  } else {
    write_expectation_csv(csv, all);
  }
  ctx.write(stem + ".csv", csv.str());
  ctx.write(stem + "_summary.json", json{{"experiment", stem}, {"pass", pass}, {"series", summaries}}.dump(2) + "\n");
  return pass ? kExitOk : kExitExperiment;
}

}  // namespace

int cmd_basis(RunContext& ctx, const Overrides&) {
  const json& cfg = ctx.config();
  require(cfg.contains("set") && cfg.contains("degree"), "basis config needs 'set' and 'degree'");
  const Basis b = basis_from_config(cfg);
  ctx.write("basis.json", basis_to_json(b).dump() + "\n");
  const ChebyshevReport report = chebyshev_constants(b);
  std::ostringstream csv;
  report.write_csv(csv);
  ctx.write("chebyshev_report.csv", csv.str());
  json summary{{"family", to_string(b.family())},
               {"set", set_to_json(b.set())},
               {"max_degree", b.max_degree()},
               {"size", b.size()},
               {"limit_estimate", report.limit_estimate},
               {"sup_norms", b.sup_norms()}};
  ctx.write("basis_summary.json", summary.dump(2) + "\n");
  return kExitOk;
}

int cmd_green(RunContext& ctx, const Overrides&) {
  const json& cfg = ctx.config();
  require(cfg.contains("basis"), "green config needs 'basis'");
  const Basis b = basis_from_config(cfg.at("basis"));
  const int m = b.set().dimension();
  std::vector<int> degrees;
  if (cfg.contains("degrees")) {
    degrees = cfg.at("degrees").get<std::vector<int>>();
  } else {
    degrees.push_back(cfg.value("degree", b.max_degree()));
  }
  Box box = Box::centered(m, 2.0);
  if (cfg.contains("box")) {
    const auto& bx = cfg.at("box");
    if (bx.contains("half")) {
      box = Box::centered(m, bx.at("half").get<double>());
    } else {
      box.lo = bx.at("lo").get<std::vector<double>>();
      box.hi = bx.at("hi").get<std::vector<double>>();
      require(box.lo.size() == static_cast<std::size_t>(2 * m) && box.hi.size() == box.lo.size(),
              "box needs 2m coordinates");
    }
  }
  const int resolution = cfg.value("resolution", m == 1 ? 257 : 24);
  const bool fields = cfg.value("write_fields", true);

  std::ostringstream table;
  table << "n,l1loc_error,mean_abs_error,max_excess\n";
  json rows = json::array();
  std::vector<double> errors;
  for (int n : degrees) {
    const BergmanField f = bergman_field(b, n, box, resolution);
    if (fields) {
      std::ostringstream csv;
      f.write_csv(csv);
      ctx.write("green_n" + std::to_string(n) + ".csv", csv.str());
    }
    table << n << ',' << format_double(f.l1_error) << ',' << format_double(f.mean_abs_error) << ','
          << format_double(f.max_excess) << '\n';
    rows.push_back({{"n", n}, {"l1loc_error", f.l1_error}, {"mean_abs_error", f.mean_abs_error},
                    {"max_excess", f.max_excess}});
    errors.push_back(f.l1_error);
  }
  bool trend = true;
  for (std::size_t i = 1; i < errors.size(); ++i) trend = trend && errors[i] <= errors[i - 1];
  json summary{{"degrees", rows}, {"resolution", resolution}, {"trend", trend ? "PASS" : "FAIL"}};
  if (cfg.contains("l1_tolerance")) {
    const double tol = cfg.at("l1_tolerance").get<double>();
    summary["threshold"] = errors.back() < tol ? "PASS" : "FAIL";
  }
  ctx.write("green.csv", table.str());
  ctx.write("green_summary.json", summary.dump(2) + "\n");
  return kExitOk;
}

int cmd_expect(RunContext& ctx, const Overrides& o) { return run_moments(ctx, o, false); }

int cmd_variance(RunContext& ctx, const Overrides& o) { return run_moments(ctx, o, true); }

int cmd_sequence(RunContext& ctx, const Overrides& o) {
  const json& cfg = ctx.config();
  ExperimentPlan p = cfg.is_null() || cfg.empty() || cfg.value("default_plan", false)
                         ? default_sequence_plan()
                         : ExperimentPlan::from_json(cfg);
  apply(p, o);
  ctx.set_seed(p.seed);
  const Basis b = cfg.contains("basis") ? basis_from_config(cfg.at("basis"))
                                        : build_basis(p.set, p.family, p.max_degree(), minimax_options(cfg));
  const SequenceTrace trace = sequence_experiment(p, b);
  std::ostringstream csv;
  write_sequence_csv(csv, trace);
  ctx.write("sequence.csv", csv.str());
  ctx.write("sequence_summary.json", trace.summary().dump(2) + "\n");
  std::cerr << trace.label << ": " << (trace.passed() ? "PASS" : "FAIL") << '\n';
  return trace.passed() ? kExitOk : kExitExperiment;
}

int cmd_moment(RunContext& ctx, const Overrides& o) {
  const json& cfg = ctx.config();
  const CoefficientMeasure measure =
      cfg.contains("measure") ? CoefficientMeasure::from_json(cfg.at("measure")) : CoefficientMeasure::gaussian();
  const double alpha = cfg.value("alpha", measure.alpha);
  const int m = cfg.value("m", 1);
  const auto degrees = cfg.value("degrees", std::vector<int>{10, 20, 40, 80, 160});
  const auto directions = cfg.value("directions", std::size_t{32});
  const auto trials = cfg.value("trials", std::size_t{100000});
  const std::uint64_t seed = o.seed.value_or(cfg.value("seed", std::uint64_t{20240601}));
  ctx.set_seed(seed);
  require(!degrees.empty(), "moment config needs degrees");

  std::ostringstream csv;
  csv << "n,d,moment_constant,max_estimate,min_estimate,spread\n";
  std::vector<double> constants;
  json per_degree = json::array();
  bool spread_ok = true;
  for (int n : degrees) {
    const std::size_t d = MultiIndexTable(m, n).size();
    const MomentConstant c = moment_constant(measure, alpha, d, directions, trials,
                                             substream_seed(seed, {static_cast<std::uint64_t>(n)}));
    double lo = c.per_direction.front().estimate, hi = lo;
    for (const auto& e : c.per_direction) {
      lo = std::min(lo, e.estimate);
      hi = std::max(hi, e.estimate);
    }
    const double spread = (hi - lo) / hi;
    spread_ok = spread_ok && spread < 0.05;
    constants.push_back(c.value);
    csv << n << ',' << d << ',' << format_double(c.value) << ',' << format_double(c.max_estimate) << ','
        << format_double(lo) << ',' << format_double(spread) << '\n';
    per_degree.push_back({{"n", n}, {"d", d}, {"constant", c.to_json()}, {"spread", spread}});
  }
  const HypothesisReport h = hypothesis_check(degrees, constants, alpha);
  json summary{{"measure", measure.to_json()},
               {"alpha", alpha},
               {"degrees", per_degree},
               {"hypotheses", h.to_json()},
               {"direction_spread", spread_ok ? "PASS" : "FAIL"}};
  bool pass = spread_ok;
  if (measure.kind == MeasureKind::kGaussian && alpha == 2.0) {
    std::vector<cplx> e1(1, cplx(1.0, 0.0));
    const MomentEstimate est = moment_estimate(measure, alpha, e1, trials, substream_seed(seed, {0}));
    const double closed = gaussian_log_moment();
    const bool ok = std::abs(est.estimate - closed) <= 3.0 * est.standard_error;
    summary["closed_form"] = {{"value", closed},
                              {"estimate", est.estimate},
                              {"standard_error", est.standard_error},
                              {"check", ok ? "PASS" : "FAIL"}};
    pass = pass && ok;
  }
  ctx.write("moment.csv", csv.str());
  ctx.write("moment_summary.json", summary.dump(2) + "\n");
  return pass ? kExitOk : kExitExperiment;
}

}  // namespace chebzero::cli
