#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <nlohmann/json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "chebzero/chebyshev.hpp"
#include "chebzero/compactset.hpp"
#include "chebzero/ensemble.hpp"
#include "chebzero/test_function.hpp"

namespace chebzero {

/// A test function with a label and the tolerance used by the sequence
/// experiment.
struct NamedTest {
  std::string name;
  TestFunction chi;
  double tolerance = 0.05;
};

/// total_mass, half_support and off_support test functions for a model set.
std::vector<NamedTest> default_tests(const ModelSet& set);

struct ExperimentPlan {
  ModelSet set;
  BasisFamily family = BasisFamily::kMinimax;
  CoefficientMeasure measure;
  std::vector<int> degrees{10, 20, 40, 80, 160};
  int samples = 200;                       // M per degree
  std::vector<NamedTest> tests;
  std::uint64_t seed = 20240601;
  int grid = 0;                            // points per real axis; 0 = dimension minimum
  std::size_t moment_directions = 32;
  std::size_t moment_trials = 20000;
  int residual_samples = 50;               // first samples used for the residual term; 0 = all
  int mean_samples = 20;                   // sequence experiment: samples for E_n
  int max_retries = 3;
  int threads = 1;

  double alpha() const noexcept { return measure.alpha; }
  int grid_points() const;
  int max_degree() const { return degrees.empty() ? 0 : degrees.back(); }
  /// Short identifier, e.g. "circle(1)/minimax/gaussian".
  std::string label() const;

  /// Throws kInvalidArgument on an empty or unsorted degree list, M < 1,
  /// no tests, or a test of the wrong dimension.
  void validate() const;

  nlohmann::json to_json() const;
  /// Missing keys fall back to the defaults above; missing tests to
  /// default_tests(set).
  static ExperimentPlan from_json(const nlohmann::json& config);
};

/// Circle and interval sets, minimax and Leja bases, Gaussian and
/// anisotropic (sigma in [1, 2]) measures, degrees {10, 20, 40, 80, 160},
/// M = 200, three test functions each.
std::vector<ExperimentPlan> default_plans(std::uint64_t seed = 20240601);

/// Circle minimax basis, Gaussian measure, degrees 10..200 step 10, one
/// sample per degree; total-mass (tolerance 0.05) and off-support (0.02).
ExperimentPlan default_sequence_plan(std::uint64_t seed = 20240601);

/// Deterministic parallel loop over [0, count): each index is run exactly
/// once; results must be written by index.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

/// Integral of (1/2n) log Gamma_n against dd^c chi by the midpoint grid rule.
double bergman_term(const Basis& basis, int n, const TestFunction& chi, int points_per_axis);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
  nlohmann::json to_json() const;
};

struct SampleTally {
  int retries = 0;
  int failures = 0;  // samples dropped after max_retries redraws
};

/// Per-degree, per-test statistics of <[Z_F]/n, chi>.
struct DegreeRecord {
  int n = 0;
  std::string test;
  int samples = 0;             // successful samples
  double mean = 0.0;           // E_n
  double std_error = 0.0;
  double variance = 0.0;       // unbiased, two-pass
  double variance_one_pass = 0.0;
  double variance_se = 0.0;
  double target = 0.0;         // pair_equilibrium
  double bergman = 0.0;
  double residual = 0.0;       // mean of the (1/n) log|<a, lambda>| pairing
  int residual_samples = 0;
  double moment_constant = 0.0;
  double dphi = 0.0;
  double gamma_max = 0.0;      // max over the grid of (1/2n) log Gamma_n
  double residual_bound = 0.0; // C_n^{1/alpha} D / n
  double variance_terms[3] = {0.0, 0.0, 0.0};
  double variance_bound = 0.0;
  double mean_bound = 0.0;     // D (gamma_max + C_n^{1/alpha} / n)
  SampleTally tally;

  double deviation() const { return std::abs(mean - target); }
};

struct MomentSeries {
  std::string label;
  ExperimentPlan plan;
  std::vector<DegreeRecord> records;  // degree-major, tests in plan order
  std::vector<Check> checks;

  bool passed() const;
  const DegreeRecord& record(int n, const std::string& test) const;
  std::vector<const DegreeRecord*> for_test(const std::string& test) const;
  nlohmann::json summary() const;
};

/// Draws M coefficient vectors per degree and pairs each zero current with
/// every test function (atomic for m = 1, potential for m = 2). A failed
/// sample is redrawn on the next sub-seed, up to max_retries times.
MomentSeries moment_series(const ExperimentPlan& plan, const Basis& basis);

/// moment_series plus the expectation checks: trend of |E_n - target| for
/// the total-mass test, residual bound and boundedness for every record.
MomentSeries expectation_experiment(const ExperimentPlan& plan, const Basis& basis);
/// moment_series plus the variance bound (3 standard errors of slack) for
/// every record and Var_last < Var_first for the total-mass test. Needs M >= 50.
MomentSeries variance_experiment(const ExperimentPlan& plan, const Basis& basis);

/// Adds the expectation or variance checks to an existing series.
void add_expectation_checks(MomentSeries& series);
void add_variance_checks(MomentSeries& series);

/// Columns: set,family,measure,test,n,samples,mean,std_error,target,
/// deviation,bergman,residual,moment_constant,dphi,residual_bound,
/// mean_bound,retries,failures
void write_expectation_csv(std::ostream& out, const std::vector<MomentSeries>& series);
/// Columns: set,family,measure,test,n,samples,variance,variance_one_pass,
/// variance_se,moment_constant,dphi,term_dphi2,term_cross,term_tail,
/// variance_bound,retries,failures
void write_variance_csv(std::ostream& out, const std::vector<MomentSeries>& series);

struct TracePoint {
  int n = 0;
  std::string test;
  double pairing = 0.0;
  double target = 0.0;
  double mean_estimate = 0.0;  // E_n from mean_samples auxiliary draws
  double partial_sum = 0.0;    // sum over n' <= n of (pairing - E_n')^2
  int retries = 0;

  double deviation() const { return std::abs(pairing - target); }
};

struct SequenceTrace {
  std::string label;
  ExperimentPlan plan;
  std::vector<TracePoint> points;  // degree-major
  std::vector<Check> checks;

  bool passed() const;
  nlohmann::json summary() const;
};

/// One independent sample per degree. A test passes when the largest
/// deviation over the last quarter of the degrees is below its tolerance.
SequenceTrace sequence_experiment(const ExperimentPlan& plan, const Basis& basis);

/// Columns: set,family,measure,test,n,pairing,target,deviation,
/// mean_estimate,partial_sum,retries
void write_sequence_csv(std::ostream& out, const SequenceTrace& trace);

/// Shortest round-trip decimal form, used for every CSV field.
std::string format_double(double x);

}  // namespace chebzero
