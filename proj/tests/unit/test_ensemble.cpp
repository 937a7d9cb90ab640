#include <gtest/gtest.h>

#include <cmath>

#include "chebzero/ensemble.hpp"
#include "chebzero/error.hpp"
#include "chebzero/multiindex.hpp"

using namespace chebzero;

TEST(Rng, SubstreamsAreDistinctAndStable) {
  EXPECT_EQ(substream_seed(1, {2, 3}), substream_seed(1, {2, 3}));
  EXPECT_NE(substream_seed(1, {2, 3}), substream_seed(1, {3, 2}));
  EXPECT_NE(substream_seed(1, {2}), substream_seed(2, {2}));
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFull);
}

TEST(Measure, GaussianSecondMoment) {
  const auto a = sample(CoefficientMeasure::gaussian(), 200000, 3);
  double s = 0.0, re = 0.0;
  for (cplx v : a) {
    s += std::norm(v);
    re += v.real() * v.real();
  }
  EXPECT_NEAR(s / a.size(), 1.0, 0.01);
  EXPECT_NEAR(re / a.size(), 0.5, 0.01);
}

TEST(Measure, SamplingIsDeterministic) {
  const auto m = CoefficientMeasure::anisotropic(1.0, 2.0);
  EXPECT_EQ(sample(m, 50, 9), sample(m, 50, 9));
  EXPECT_NE(sample(m, 50, 9), sample(m, 50, 10));
}

TEST(Measure, AnisotropicScheduleIsGeometric) {
  const auto m = CoefficientMeasure::anisotropic(1.0, 2.0);
  EXPECT_DOUBLE_EQ(m.scale(0, 11), 1.0);
  EXPECT_DOUBLE_EQ(m.scale(10, 11), 2.0);
  EXPECT_NEAR(m.scale(5, 11), std::sqrt(2.0), 1e-14);
  const auto e = CoefficientMeasure::anisotropic({1.0, 3.0, 2.0});
  EXPECT_DOUBLE_EQ(e.scale(1, 3), 3.0);
  EXPECT_DOUBLE_EQ(CoefficientMeasure::gaussian().scale(7, 11), 1.0);
}

TEST(Measure, ValidationAndJson) {
  EXPECT_THROW(CoefficientMeasure::gaussian(1.5).validate(), Error);
  EXPECT_THROW(CoefficientMeasure::anisotropic(0.0, 2.0).validate(), Error);
  EXPECT_THROW(CoefficientMeasure::heavy_tail(2.0).validate(), Error);
  for (const auto& m : {CoefficientMeasure::gaussian(3.0), CoefficientMeasure::anisotropic(0.5, 4.0),
                        CoefficientMeasure::heavy_tail(5.0)}) {
    EXPECT_EQ(CoefficientMeasure::from_json(m.to_json()).to_json(), m.to_json());
  }
  EXPECT_THROW(CoefficientMeasure::from_json({{"kind", "cauchy"}}), Error);
}

TEST(Pairing, IsBilinear) {
  const std::vector<cplx> a{cplx(1, 2), cplx(0, 1)};
  const std::vector<cplx> v{cplx(0, 1), cplx(3, 0)};
  EXPECT_EQ(pairing(a, v), cplx(1, 2) * cplx(0, 1) + cplx(0, 3));
}

TEST(Moment, GaussianClosedForm) {
  const std::vector<cplx> e1{cplx(1, 0), cplx(0, 0), cplx(0, 0)};
  const auto est = moment_estimate(CoefficientMeasure::gaussian(), 2.0, e1, 200000, 17);
  EXPECT_NEAR(est.estimate, gaussian_log_moment(), 3.0 * est.standard_error);
  EXPECT_NEAR(gaussian_log_moment(), 0.49452, 1e-5);
  const double s = 1.0 / std::sqrt(3.0);
  const std::vector<cplx> diag{cplx(s, 0), cplx(0, s), cplx(-s, 0)};
  const auto est2 = moment_estimate(CoefficientMeasure::gaussian(), 2.0, diag, 200000, 18);
  EXPECT_NEAR(est2.estimate, gaussian_log_moment(), 3.0 * est2.standard_error);
}

TEST(Moment, RejectsBadInput) {
  const std::vector<cplx> e1{cplx(1, 0)};
  EXPECT_THROW(moment_estimate(CoefficientMeasure::gaussian(), 2.0, e1, 100, 1), Error);
  const std::vector<cplx> bad{cplx(2, 0)};
  EXPECT_THROW(moment_estimate(CoefficientMeasure::gaussian(), 2.0, bad, 10000, 1), Error);
}

TEST(Moment, ConstantCoversEveryDirection) {
  const auto c = moment_constant(CoefficientMeasure::gaussian(), 2.0, 6, 32, 10000, 23);
  EXPECT_EQ(c.per_direction.size(), 38u);
  double mx = 0.0;
  for (const auto& e : c.per_direction) mx = std::max(mx, e.estimate);
  EXPECT_DOUBLE_EQ(c.max_estimate, mx);
  EXPECT_DOUBLE_EQ(c.value, 1.5 * mx);
}

TEST(Hypotheses, GaussianConstantsAreLittleO) {
  const auto r = hypothesis_check(CoefficientMeasure::gaussian(), 2.0, 1, {10, 20, 40, 80}, 32, 10000, 5);
  EXPECT_TRUE(r.little_o);
  // Bounded C_n gives a harmonic tail.
  EXPECT_FALSE(r.summable);
  const auto decaying = hypothesis_check({10, 20, 40, 80}, {1.0, 0.25, 0.0625, 0.015625}, 2.0);
  EXPECT_TRUE(decaying.little_o);
  EXPECT_TRUE(decaying.summable);
  const auto grow = hypothesis_check({10, 20, 40}, {100.0, 400.0, 1600.0}, 2.0);
  EXPECT_FALSE(grow.little_o);
}
