#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "chebzero/chebyshev.hpp"
#include "chebzero/compactset.hpp"
#include "chebzero/error.hpp"

using namespace chebzero;

TEST(Green, ClosedFormValues) {
  EXPECT_NEAR(green_value(ModelSet::unit_disk(), Point(cplx(2.0, 0.0))), std::log(2.0), 1e-15);
  EXPECT_EQ(green_value(ModelSet::unit_circle(), Point(std::polar(1.0, 0.7))), 0.0);
  EXPECT_NEAR(green_value(ModelSet::interval(), Point(cplx(2.0, 0.0))), 1.3169578969248166, 1e-14);
  EXPECT_NEAR(green_value(ModelSet::interval(), Point(cplx(0.0, 1.0))), std::asinh(1.0), 1e-14);
}

TEST(Green, IntervalValueMatchesMinimaxEnvelope) {
  // (1/n) log |t_n(2)| / M_n increases to V_K(2) for the monic minimax family.
  const Basis b = minimax_basis(ModelSet::interval(), 30);
  double best = 0.0;
  for (std::size_t j = 1; j < b.size(); ++j) {
    const double v = std::log(std::abs(b.monic_value(j, Point(cplx(2.0, 0.0)))) / b.sup_norm(j)) /
                     static_cast<double>(j);
    best = std::max(best, v);
  }
  EXPECT_NEAR(best, std::log(2.0 + std::sqrt(3.0)), 0.05);
  EXPECT_LE(best, std::log(2.0 + std::sqrt(3.0)) + 1e-12);
}

TEST(Green, VanishesOnKAndGrowsLogarithmically) {
  for (const ModelSet& s : {ModelSet::unit_circle(), ModelSet::unit_disk(), ModelSet::interval(-0.5, 2.0),
                            ModelSet::product(SetFactor::disk(), SetFactor::interval(-1, 1))}) {
    for (const auto& z : interior_sample(s, 1000, 7)) EXPECT_LE(green_value(s, z), 1e-10);
    for (double r : {1e3, 1e6}) {
      Point z(cplx(0.0, r));
      if (s.dimension() == 2) z[1] = cplx(r, 0.0);
      EXPECT_LT(std::abs(green_value(s, z) - std::log(r)), 2.0);
      EXPECT_GE(green_value(s, z), 0.0);
    }
  }
}

TEST(Green, ProductIsMaxOfFactors) {
  const auto f1 = SetFactor::interval(-1, 1), f2 = SetFactor::circle(1.5);
  const ModelSet s = ModelSet::product(f1, f2);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const Point z(cplx(g(rng), g(rng)), cplx(g(rng), g(rng)));
    EXPECT_EQ(green_value(s, z), std::max(green_value(f1, z[0]), green_value(f2, z[1])));
  }
}

TEST(BoundarySample, Examples) {
  const auto a = boundary_sample(ModelSet::interval(), 3);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_NEAR(a[0][0].real(), -1.0, 1e-15);
  EXPECT_NEAR(a[1][0].real(), 0.0, 1e-15);
  EXPECT_NEAR(a[2][0].real(), 1.0, 1e-15);
  const auto c = boundary_sample(ModelSet::unit_circle(), 4);
  const cplx expect[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int i = 0; i < 4; ++i) EXPECT_LT(std::abs(c[static_cast<std::size_t>(i)][0] - expect[i]), 1e-15);
  EXPECT_EQ(boundary_sample(ModelSet::product(SetFactor::disk(), SetFactor::disk()), 4).size(), 16u);
}

TEST(Equilibrium, MassAndSymmetry) {
  const auto circle = equilibrium_density(ModelSet::unit_circle());
  EXPECT_NEAR(circle.integrate([](cplx) { return 1.0; }, 64), 1.0, 1e-14);
  EXPECT_NEAR(circle.mass(0.0, 2.0 * kPi), 1.0, 1e-14);
  const auto arcsine = equilibrium_density(ModelSet::interval());
  EXPECT_NEAR(arcsine.mass(-1.0, 1.0), 1.0, 1e-14);
  EXPECT_NEAR(arcsine.mass(-1.0, 0.0), 0.5, 1e-14);
  EXPECT_NEAR(arcsine.integrate([](cplx) { return 1.0; }, 1000), 1.0, 1e-12);
  // Second moment of the arcsine law is 1/2.
  EXPECT_NEAR(arcsine.integrate([](cplx z) { return z.real() * z.real(); }, 64), 0.5, 1e-12);
}

TEST(Equilibrium, UnsupportedForProducts) {
  try {
    equilibrium_density(ModelSet::product(SetFactor::disk(), SetFactor::disk()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnsupported);
  }
}
