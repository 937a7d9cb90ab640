#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "chebzero/currents.hpp"
#include "chebzero/error.hpp"
#include "chebzero/stats.hpp"

using namespace chebzero;

namespace {

ExperimentPlan small_plan(int samples) {
  ExperimentPlan p;
  p.set = ModelSet::unit_circle();
  p.measure = CoefficientMeasure::gaussian();
  p.degrees = {10, 20};
  p.samples = samples;
  p.tests = default_tests(p.set);
  p.moment_directions = 32;
  p.moment_trials = 10000;
  p.residual_samples = 4;
  return p;
}

const Basis& basis() {
  static const Basis b = minimax_basis(ModelSet::unit_circle(), 20);
  return b;
}

const Basis& basis40() {
  static const Basis b = minimax_basis(ModelSet::unit_circle(), 40);
  return b;
}

}  // namespace

TEST(Stats, VarianceFormulasAgree) {
  const auto s = moment_series(small_plan(24), basis());
  ASSERT_EQ(s.records.size(), 6u);
  for (const auto& r : s.records) {
    EXPECT_EQ(r.samples, 24);
    EXPECT_NEAR(r.variance, r.variance_one_pass, 1e-10 * (1.0 + r.mean * r.mean));
    EXPECT_NEAR(r.std_error, std::sqrt(r.variance / 24.0), 1e-15);
    EXPECT_EQ(r.residual_samples, 4);
    EXPECT_DOUBLE_EQ(r.variance_bound, r.variance_terms[0] + r.variance_terms[1] + r.variance_terms[2]);
  }
}

TEST(Stats, DeterministicAcrossRunsAndThreads) {
  auto p = small_plan(12);
  const auto a = moment_series(p, basis());
  p.threads = 3;
  const auto b = moment_series(p, basis());
  std::ostringstream x, y;
  write_expectation_csv(x, {a});
  write_expectation_csv(y, {b});
  EXPECT_EQ(x.str(), y.str());
  p.seed += 1;
  std::ostringstream z;
  write_expectation_csv(z, {moment_series(p, basis())});
  EXPECT_NE(x.str(), z.str());
}

TEST(Stats, StandardErrorShrinksWithSamples) {
  auto p = small_plan(16);
  p.degrees = {10};
  p.residual_samples = 1;
  const auto small = moment_series(p, basis());
  p.samples = 64;
  const auto large = moment_series(p, basis());
  const double ratio = large.record(10, "half_support").std_error / small.record(10, "half_support").std_error;
  EXPECT_GT(ratio, 0.25);
  EXPECT_LT(ratio, 0.8);
}

TEST(Stats, LinearInTestFunction) {
  auto p = small_plan(8);
  p.degrees = {10};
  p.residual_samples = 1;
  const auto base = moment_series(p, basis());
  for (auto& t : p.tests) t.chi = t.chi.scaled(2.0);
  const auto doubled = moment_series(p, basis());
  for (std::size_t i = 0; i < base.records.size(); ++i) {
    EXPECT_NEAR(doubled.records[i].mean, 2.0 * base.records[i].mean, 1e-9);
    EXPECT_NEAR(doubled.records[i].target, 2.0 * base.records[i].target, 1e-9);
  }
}

TEST(Stats, ExpectationChecksOnCircle) {
  auto p = small_plan(24);
  const auto s = expectation_experiment(p, basis());
  bool saw_trend = false;
  for (const auto& c : s.checks) saw_trend |= c.name.find("trend") != std::string::npos;
  EXPECT_TRUE(saw_trend);
  EXPECT_NEAR(s.record(20, "total_mass").mean, 1.0, 0.05);
  EXPECT_NEAR(s.record(20, "off_support").mean, 0.0, 0.02);
}

TEST(Stats, VarianceExperimentNeedsFiftySamples) {
  EXPECT_THROW(variance_experiment(small_plan(20), basis()), Error);
}

TEST(Plan, JsonRoundTripAndValidation) {
  const auto plans = default_plans();
  ASSERT_EQ(plans.size(), 8u);
  for (const auto& p : plans) {
    EXPECT_EQ(ExperimentPlan::from_json(p.to_json()).to_json(), p.to_json());
    EXPECT_EQ(p.tests.size(), 3u);
  }
  auto p = small_plan(4);
  p.degrees = {20, 10};
  EXPECT_THROW(p.validate(), Error);
  p.degrees = {10};
  p.samples = 0;
  EXPECT_THROW(p.validate(), Error);
  const auto q = ExperimentPlan::from_json(
      {{"set", {{"kind", "interval"}}}, {"tests", {"total_mass"}}, {"samples", 5}});
  EXPECT_EQ(q.tests.size(), 1u);
  EXPECT_EQ(q.samples, 5);
  EXPECT_EQ(q.grid_points(), 128);
}

TEST(Plan, DefaultTestTargets) {
  for (const ModelSet& set : {ModelSet::unit_circle(), ModelSet(SetFactor::circle(2.0)), ModelSet::interval(0.0, 3.0)}) {
    const auto tests = default_tests(set);
    ASSERT_EQ(tests.size(), 3u);
    EXPECT_NEAR(pair_equilibrium(set, tests[0].chi, 128).value, 1.0, 1e-12);
    EXPECT_NEAR(pair_equilibrium(set, tests[1].chi, 128).value, 0.5, 1e-6);
    EXPECT_NEAR(pair_equilibrium(set, tests[2].chi, 128).value, 0.0, 1e-15);
  }
}

TEST(Sequence, TraceLayout) {
  auto p = default_sequence_plan();
  p.degrees = {10, 20, 30, 40};
  p.mean_samples = 3;
  p.moment_trials = 10000;
  const auto t = sequence_experiment(p, basis40());
  EXPECT_EQ(t.points.size(), 8u);
  double partial = 0.0;
  for (const auto& pt : t.points) {
    if (pt.test != "total_mass") continue;
    partial += (pt.pairing - pt.mean_estimate) * (pt.pairing - pt.mean_estimate);
    EXPECT_NEAR(pt.partial_sum, partial, 1e-14);
  }
  std::ostringstream out;
  write_sequence_csv(out, t);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "set,family,measure,test,n,pairing,target,deviation,mean_estimate,partial_sum,retries");
}

TEST(Parallel, EveryIndexOnce) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, 2, [](std::size_t i) { if (i == 7) throw Error(ErrorKind::kRootFailure, "x"); }), Error);
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  const double x = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(x)), x);
}
