#include "chebzero/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "chebzero/error.hpp"
#include "chebzero/multiindex.hpp"

namespace chebzero {

using nlohmann::json;

CoefficientMeasure CoefficientMeasure::gaussian(double alpha) {
  CoefficientMeasure m;
  m.alpha = alpha;
  return m;
}

CoefficientMeasure CoefficientMeasure::anisotropic(double sigma_min, double sigma_max, double alpha) {
  CoefficientMeasure m;
  m.kind = MeasureKind::kAnisotropic;
  m.sigma_min = sigma_min;
  m.sigma_max = sigma_max;
  m.alpha = alpha;
  return m;
}

CoefficientMeasure CoefficientMeasure::anisotropic(std::vector<double> schedule, double alpha) {
  CoefficientMeasure m;
  m.kind = MeasureKind::kAnisotropic;
  m.sigma = std::move(schedule);
  m.alpha = alpha;
  return m;
}

CoefficientMeasure CoefficientMeasure::heavy_tail(double p, double alpha) {
  CoefficientMeasure m;
  m.kind = MeasureKind::kHeavyTail;
  m.tail_exponent = p;
  m.alpha = alpha;
  return m;
}

void CoefficientMeasure::validate() const {
  require(alpha >= 2.0, "moment exponent alpha must be at least 2");
  if (kind == MeasureKind::kAnisotropic) {
    if (sigma.empty()) {
      require(sigma_min > 0.0 && sigma_max > 0.0, "anisotropic scales must be positive");
    } else {
      for (double s : sigma) require(s > 0.0, "anisotropic scales must be positive");
    }
  }
  if (kind == MeasureKind::kHeavyTail) require(tail_exponent > 2.0, "tail exponent must exceed 2");
}

double CoefficientMeasure::scale(std::size_t j, std::size_t d) const {
  if (kind != MeasureKind::kAnisotropic) return 1.0;
  if (!sigma.empty()) {
    require(j < sigma.size(), "explicit sigma schedule is shorter than the coefficient vector");
    return sigma[j];
  }
  if (d <= 1) return sigma_min;
  const double t = static_cast<double>(j) / static_cast<double>(d - 1);
  return sigma_min * std::pow(sigma_max / sigma_min, t);
}

std::string CoefficientMeasure::name() const {
  switch (kind) {
    case MeasureKind::kGaussian: return "gaussian";
    case MeasureKind::kAnisotropic: return "anisotropic";
    case MeasureKind::kHeavyTail: return "heavytail";
  }
  return "gaussian";
}

json CoefficientMeasure::to_json() const {
  json j{{"kind", name()}, {"alpha", alpha}};
  if (kind == MeasureKind::kAnisotropic) {
    if (sigma.empty()) {
      j["sigma_min"] = sigma_min;
      j["sigma_max"] = sigma_max;
    } else {
      j["sigma"] = sigma;
    }
  }
  if (kind == MeasureKind::kHeavyTail) j["tail_exponent"] = tail_exponent;
  return j;
}

CoefficientMeasure CoefficientMeasure::from_json(const json& config) {
  require(config.is_object() && config.contains("kind"), "measure config needs a 'kind'");
  const auto kind = config.at("kind").get<std::string>();
  const double alpha = config.value("alpha", 2.0);
  CoefficientMeasure m;
  if (kind == "gaussian") {
    m = gaussian(alpha);
  } else if (kind == "anisotropic") {
    if (config.contains("sigma")) {
      m = anisotropic(config.at("sigma").get<std::vector<double>>(), alpha);
    } else {
      m = anisotropic(config.value("sigma_min", 1.0), config.value("sigma_max", 2.0), alpha);
    }
  } else if (kind == "heavytail") {
    m = heavy_tail(config.value("tail_exponent", 3.0), alpha);
  } else {
    fail(ErrorKind::kInvalidArgument, "unknown measure kind '" + kind + "'");
  }
  m.validate();
  return m;
}

void sample(const CoefficientMeasure& measure, std::size_t d, Rng& rng, std::vector<cplx>& out) {
  require(d >= 1, "coefficient dimension must be positive");
  out.resize(d);
  // Real and imaginary parts N(0, 1/2) give E|a_j|^2 = 1.
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  for (std::size_t j = 0; j < d; ++j) {
    const double re = normal(rng);
    const double im = normal(rng);
    out[j] = cplx(re, im) * measure.scale(j, d);
  }
  if (measure.kind == MeasureKind::kHeavyTail) {
    double nrm = 0.0;
    for (cplx x : out) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    // Inverse CDF of 1 - (1 + r)^{-p}.
    const double r = std::pow(1.0 - unif(rng), -1.0 / measure.tail_exponent) - 1.0;
    for (cplx& x : out) x *= r / nrm;
  }
}

std::vector<cplx> sample(const CoefficientMeasure& measure, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<cplx> out;
  sample(measure, d, rng, out);
  return out;
}

cplx pairing(std::span<const cplx> a, std::span<const cplx> v) {
  require(a.size() == v.size(), "pairing of vectors with different lengths");
  cplx s = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) s += a[l] * v[l];
  return s;
}

namespace {

void check_unit(std::span<const cplx> v) {
  double n2 = 0.0;
  for (cplx x : v) n2 += std::norm(x);
  require(std::abs(std::sqrt(n2) - 1.0) <= 1e-10, "direction v must have unit norm");
}

// Accumulates |log|<a, v>||^alpha over shared samples for several directions.
struct MomentAccumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;
  std::size_t zeros = 0;

  void add(cplx p, double alpha) {
    const double r = std::abs(p);
    if (r == 0.0) {
      ++zeros;
      return;
    }
    const double x = std::pow(std::abs(std::log(r)), alpha);
    sum += x;
    sum_sq += x * x;
    ++count;
  }

  MomentEstimate finish(std::span<const cplx> v, double alpha, std::size_t trials) const {
    MomentEstimate e;
    e.direction.assign(v.begin(), v.end());
    e.alpha = alpha;
    e.trials = trials;
    e.zero_pairings = zeros;
    if (count > 0) {
      const double n = static_cast<double>(count);
      e.estimate = sum / n;
      const double var = count > 1 ? std::max(0.0, (sum_sq - n * e.estimate * e.estimate) / (n - 1.0)) : 0.0;
      e.standard_error = std::sqrt(var / n);
    }
    return e;
  }
};

}  // namespace

MomentEstimate moment_estimate(const CoefficientMeasure& measure, double alpha,
                               std::span<const cplx> v, std::size_t trials, std::uint64_t seed) {
  measure.validate();
  require(alpha >= 2.0, "moment exponent alpha must be at least 2");
  require(trials >= 10000, "moment estimates need at least 10^4 trials");
  check_unit(v);
  Rng rng(seed);
  std::vector<cplx> a;
  MomentAccumulator acc;
  for (std::size_t t = 0; t < trials; ++t) {
    sample(measure, v.size(), rng, a);
    acc.add(pairing(a, v), alpha);
  }
  return acc.finish(v, alpha, trials);
}

json MomentConstant::to_json() const {
  json dirs = json::array();
  for (const auto& e : per_direction) {
    dirs.push_back({{"estimate", e.estimate},
                    {"standard_error", e.standard_error},
                    {"trials", e.trials},
                    {"zero_pairings", e.zero_pairings}});
  }
  return {{"value", value},
          {"max_estimate", max_estimate},
          {"safety_factor", safety_factor},
          {"heuristic", true},
          {"directions", std::move(dirs)}};
}

MomentConstant moment_constant(const CoefficientMeasure& measure, double alpha, std::size_t d,
                               std::size_t direction_count, std::size_t trials,
                               std::uint64_t seed) {
  measure.validate();
  require(direction_count >= 32, "moment_constant needs at least 32 random directions");
  require(trials >= 10000, "moment estimates need at least 10^4 trials");
  require(d >= 1, "coefficient dimension must be positive");

  std::vector<std::vector<cplx>> dirs;
  Rng dir_rng(substream_seed(seed, {1}));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t k = 0; k < direction_count; ++k) {
    std::vector<cplx> v(d);
    double n2 = 0.0;
    for (auto& x : v) {
      const double re = normal(dir_rng);
      const double im = normal(dir_rng);
      x = cplx(re, im);
      n2 += std::norm(x);
    }
    for (auto& x : v) x /= std::sqrt(n2);
    dirs.push_back(std::move(v));
  }

  std::vector<MomentAccumulator> acc(direction_count + d);
  Rng rng(substream_seed(seed, {2}));
  std::vector<cplx> a;
  for (std::size_t t = 0; t < trials; ++t) {
    sample(measure, d, rng, a);
    for (std::size_t k = 0; k < direction_count; ++k) acc[k].add(pairing(a, dirs[k]), alpha);
    for (std::size_t l = 0; l < d; ++l) acc[direction_count + l].add(a[l], alpha);
  }

  MomentConstant out;
  for (std::size_t k = 0; k < direction_count; ++k) {
    out.per_direction.push_back(acc[k].finish(dirs[k], alpha, trials));
  }
  for (std::size_t l = 0; l < d; ++l) {
    std::vector<cplx> e(d, cplx{});
    e[l] = 1.0;
    out.per_direction.push_back(acc[direction_count + l].finish(e, alpha, trials));
  }
  for (const auto& e : out.per_direction) out.max_estimate = std::max(out.max_estimate, e.estimate);
  out.value = out.safety_factor * out.max_estimate;
  return out;
}

json HypothesisReport::to_json() const {
  return {{"degrees", degrees},
          {"constants", constants},
          {"growth_ratio", growth_ratio},
          {"partial_sums", partial_sums},
          {"little_o", little_o},
          {"summable", summable}};
}

HypothesisReport hypothesis_check(const std::vector<int>& degrees,
                                  const std::vector<double>& constants, double alpha) {
  require(degrees.size() == constants.size(), "one constant per degree");
  require(degrees.size() >= 2, "trend diagnostics need at least two degrees");
  require(std::is_sorted(degrees.begin(), degrees.end()) && degrees.front() >= 1,
          "degrees must be positive and increasing");
  HypothesisReport r;
  r.degrees = degrees;
  r.constants = constants;
  double partial = 0.0;
  std::vector<double> term_times_n;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const double n = degrees[i];
    r.growth_ratio.push_back(constants[i] / std::pow(n, alpha));
    const double root = std::pow(constants[i], 1.0 / alpha);
    partial += root / n;
    r.partial_sums.push_back(partial);
    term_times_n.push_back(root);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < r.growth_ratio.size(); ++i) {
    monotone &= r.growth_ratio[i] <= 1.1 * r.growth_ratio[i - 1];
  }
  r.little_o = monotone && r.growth_ratio.back() < 0.5 * r.growth_ratio.front();
  r.summable = term_times_n.back() < 0.5 * term_times_n.front();
  return r;
}

HypothesisReport hypothesis_check(const CoefficientMeasure& measure, double alpha, int m,
                                  const std::vector<int>& degrees, std::size_t direction_count,
                                  std::size_t trials, std::uint64_t seed) {
  std::vector<double> constants;
  for (int n : degrees) {
    const auto d = static_cast<std::size_t>(dimension(m, n));
    constants.push_back(
        moment_constant(measure, alpha, d, direction_count, trials,
                        substream_seed(seed, {static_cast<std::uint64_t>(n)}))
            .value);
  }
  return hypothesis_check(degrees, constants, alpha);
}

}  // namespace chebzero
