#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chebzero/rng.hpp"
#include "chebzero/types.hpp"

namespace chebzero {

enum class MeasureKind { kGaussian, kAnisotropic, kHeavyTail };

/// Law of the coefficient vector a in C^{d_n}.
///
/// kGaussian: i.i.d. standard complex Gaussians, E|a_j|^2 = 1.
/// kAnisotropic: a_j = sigma_j g_j; sigma is either given explicitly or
///   geometric from sigma_min (j = 1) to sigma_max (j = d_n).
/// kHeavyTail: a = r U with U uniform on the unit sphere of C^{d_n} and
///   radial density proportional to (1 + r)^{-(p + 1)}.
struct CoefficientMeasure {
  MeasureKind kind = MeasureKind::kGaussian;
  double alpha = 2.0;
  double sigma_min = 1.0;
  double sigma_max = 2.0;
  std::vector<double> sigma;
  double tail_exponent = 3.0;

  static CoefficientMeasure gaussian(double alpha = 2.0);
  static CoefficientMeasure anisotropic(double sigma_min, double sigma_max, double alpha = 2.0);
  static CoefficientMeasure anisotropic(std::vector<double> schedule, double alpha = 2.0);
  static CoefficientMeasure heavy_tail(double p = 3.0, double alpha = 2.0);

  /// Throws kInvalidArgument when alpha < 2, some sigma <= 0, or p <= 2.
  void validate() const;

  /// sigma_j (0-based j) for vectors of length d; 1 for isotropic kinds.
  double scale(std::size_t j, std::size_t d) const;

  std::string name() const;
  nlohmann::json to_json() const;
  static CoefficientMeasure from_json(const nlohmann::json& config);
};

void sample(const CoefficientMeasure& measure, std::size_t d, Rng& rng, std::vector<cplx>& out);
std::vector<cplx> sample(const CoefficientMeasure& measure, std::size_t d, std::uint64_t seed);

/// Bilinear pairing sum a_l v_l, the one used in F = <a, u(z)>.
cplx pairing(std::span<const cplx> a, std::span<const cplx> v);

struct MomentEstimate {
  std::vector<cplx> direction;
  double alpha = 2.0;
  std::size_t trials = 0;
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t zero_pairings = 0;  // excluded trials with <a, v> = 0 exactly
};

/// Monte Carlo mean of |log|<a, v>||^alpha. Needs ||v|| = 1 and trials >= 10^4.
MomentEstimate moment_estimate(const CoefficientMeasure& measure, double alpha,
                               std::span<const cplx> v, std::size_t trials, std::uint64_t seed);

struct MomentConstant {
  double value = 0.0;        // safety factor times the largest estimate
  double max_estimate = 0.0;
  double safety_factor = 1.5;
  std::vector<MomentEstimate> per_direction;  // random directions, then e_1..e_d
  nlohmann::json to_json() const;
};

/// C_n estimate: 1.5 times the largest moment_estimate over `direction_count`
/// random unit directions and the d coordinate directions. All directions
/// share one sample set. A heuristic, not a bound.
MomentConstant moment_constant(const CoefficientMeasure& measure, double alpha, std::size_t d,
                               std::size_t direction_count, std::size_t trials, std::uint64_t seed);

struct HypothesisReport {
  std::vector<int> degrees;
  std::vector<double> constants;       // C_n
  std::vector<double> growth_ratio;    // C_n / n^alpha
  std::vector<double> partial_sums;    // sum_{n' <= n} C_{n'}^{1/alpha} / n'
  bool little_o = false;               // C_n / n^alpha trends to 0
  bool summable = false;               // tail terms decay faster than 1/n
  nlohmann::json to_json() const;
};

/// Trend diagnostics over the supplied degrees. little_o: the ratio sequence
/// is non-increasing up to 10% noise and its last value is below half of
/// the first. summable: n * C_n^{1/alpha} / n (the harmonic-normalized term)
/// falls below half of its first value.
HypothesisReport hypothesis_check(const std::vector<int>& degrees,
                                  const std::vector<double>& constants, double alpha);

/// Same, with C_n measured by moment_constant at d = dimension(m, n).
HypothesisReport hypothesis_check(const CoefficientMeasure& measure, double alpha, int m,
                                  const std::vector<int>& degrees, std::size_t direction_count,
                                  std::size_t trials, std::uint64_t seed);

/// Closed form of E[(log|g|)^2] for g standard complex Gaussian.
inline double gaussian_log_moment() { return (kEulerGamma * kEulerGamma + kPi * kPi / 6.0) / 4.0; }

}  // namespace chebzero
