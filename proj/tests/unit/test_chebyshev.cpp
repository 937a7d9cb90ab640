#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "../oracle/lp_oracle.hpp"
#include "chebzero/basis_io.hpp"
#include "chebzero/chebyshev.hpp"
#include "chebzero/error.hpp"

using namespace chebzero;

namespace {

double max_on_boundary(const Basis& b, std::size_t j, int count) {
  double m = 0.0;
  for (const auto& z : boundary_sample(b.set(), count)) m = std::max(m, std::abs(b.monic_value(j, z)));
  return m;
}

}  // namespace

TEST(Minimax, IntervalNormsArePowersOfTwo) {
  const MultiIndexTable t(1, 12);
  for (int n = 1; n <= 12; ++n) {
    const auto r = minimax_monic(ModelSet::interval(), t, static_cast<std::size_t>(n));
    EXPECT_NEAR(r.sup_norm / std::ldexp(1.0, 1 - n), 1.0, 1e-6) << "n = " << n;
    EXPECT_GE(r.alternation_count, n + 1);
  }
}

TEST(Minimax, MatchesLpOracleOnRandomSets) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  std::uniform_int_distribution<int> deg(1, 12);
  for (int c = 0; c < 6; ++c) {
    const int n = deg(rng);
    const MultiIndexTable t(1, n);
    if (c % 2 == 0) {
      const double a = -u(rng), b = u(rng);
      const auto r = minimax_monic(ModelSet::interval(a, b), t, static_cast<std::size_t>(n));
      const double lp = oracle::interval_minimax(a, b, n, 27721);
      EXPECT_NEAR(r.sup_norm / lp, 1.0, 1e-6) << "[" << a << "," << b << "] n = " << n;
    } else {
      const double radius = u(rng);
      const auto r = minimax_monic(ModelSet(SetFactor::circle(radius)), t, static_cast<std::size_t>(n));
      EXPECT_NEAR(r.sup_norm / oracle::circle_minimax(radius, n), 1.0, 1e-6) << "r = " << radius << " n = " << n;
    }
  }
}

TEST(Minimax, CircleGivesMonomials) {
  const Basis b = minimax_basis(ModelSet::unit_circle(), 10);
  for (std::size_t j = 1; j < b.size(); ++j) {
    EXPECT_NEAR(b.sup_norm(j), 1.0, 1e-8);
    const cplx z = std::polar(0.7, 0.3);
    EXPECT_LT(std::abs(b.monic_value(j, Point(z)) - std::pow(z, static_cast<int>(j))), 1e-10);
  }
}

TEST(Minimax, SymmetricSetDegreeOneIsZ) {
  for (const ModelSet& s : {ModelSet::interval(), ModelSet::unit_circle(), ModelSet::unit_disk()}) {
    const Basis b = minimax_basis(s, 1);
    for (double x : {-0.4, 0.3, 0.9}) EXPECT_LT(std::abs(b.monic_value(1, Point(cplx(x, 0.2))) - cplx(x, 0.2)), 1e-10);
  }
}

TEST(Minimax, WeightedL2HistoryIsNonDecreasing) {
  const MultiIndexTable t(2, 4);
  const auto r = minimax_monic(ModelSet::product(SetFactor::interval(-1, 1), SetFactor::interval(-1, 1)), t, 7);
  ASSERT_GE(r.weighted_l2_history.size(), 2u);
  for (std::size_t k = 1; k < r.weighted_l2_history.size(); ++k) {
    EXPECT_GE(r.weighted_l2_history[k], r.weighted_l2_history[k - 1] - 1e-12);
  }
  const auto r1 = minimax_monic(ModelSet::interval(), MultiIndexTable(1, 6), 6);
  for (std::size_t k = 1; k < r1.weighted_l2_history.size(); ++k) {
    EXPECT_GE(r1.weighted_l2_history[k], r1.weighted_l2_history[k - 1] - 1e-12);
  }
}

TEST(Minimax, GridRefinementChangesNormBelowOneMillionth) {
  const MultiIndexTable t(1, 12);
  for (const ModelSet& s : {ModelSet::interval(-0.3, 1.7), ModelSet(SetFactor::circle(0.8))}) {
    for (std::size_t j : {3u, 9u}) {
      const auto r = minimax_monic(s, t, j);
      MinimaxOptions fine;
      fine.grid_size = 2 * r.grid_size - 1;
      EXPECT_NEAR(minimax_monic(s, t, j, fine).sup_norm / r.sup_norm, 1.0, 1e-6);
    }
  }
}

TEST(Minimax, TwoVariableBasisIsMonicAndNormalized) {
  const Basis b = minimax_basis(ModelSet::product(SetFactor::disk(), SetFactor::interval(-1, 1)), 4);
  EXPECT_EQ(b.size(), 15u);
  for (std::size_t j = 0; j < b.size(); ++j) {
    EXPECT_EQ(b.element(j).coefficients[j], cplx(1.0, 0.0));
    const double ratio = max_on_boundary(b, j, 96) / b.sup_norm(j);
    EXPECT_GT(ratio, 0.99);
    EXPECT_LT(ratio, 1.0 + 2e-3);  // refinement accuracy of the m = 2 sup norm
  }
}

TEST(Minimax, RejectsOversizedTwoVariableDegree) {
  EXPECT_THROW(minimax_basis(ModelSet::product(SetFactor::disk(), SetFactor::disk()), 13), Error);
}

TEST(Leja, Examples) {
  const auto c2 = leja_points(ModelSet::unit_circle(), 2);
  EXPECT_LT(std::abs(c2[0] - cplx(1, 0)), 1e-15);
  EXPECT_LT(std::abs(c2[1] - cplx(-1, 0)), 1e-12);
  const auto i2 = leja_points(ModelSet::interval(), 2);
  EXPECT_LT(std::abs(i2[0] - cplx(1, 0)), 1e-15);
  EXPECT_LT(std::abs(i2[1] - cplx(-1, 0)), 1e-15);
  const auto c4 = leja_points(ModelSet::unit_circle(), 4);
  EXPECT_LT(std::abs(c4[2] * c4[3] - cplx(1, 0)), 1e-12);  // {i, -i} in some order
  EXPECT_LT(std::abs(c4[2] + c4[3]), 1e-12);
}

TEST(Leja, GreedyMatchesBruteForce) {
  const int grid = 4096;
  const auto pts = leja_points(ModelSet::unit_circle(), 12, grid);
  std::vector<cplx> ref{cplx(1, 0)};
  for (int k = 1; k < 12; ++k) {
    double best = -1.0;
    cplx arg;
    for (int i = 0; i < grid; ++i) {
      const cplx z = std::polar(1.0, 2.0 * kPi * i / grid);
      double p = 0.0;
      for (cplx w : ref) p += std::log(std::abs(z - w));
      if (p > best + 1e-12) {
        best = p;
        arg = z;
      }
    }
    ref.push_back(arg);
  }
  for (int k = 0; k < 12; ++k) EXPECT_LT(std::abs(pts[static_cast<std::size_t>(k)] - ref[static_cast<std::size_t>(k)]), 1e-12);
}

TEST(Leja, BasisElements) {
  const Basis b = leja_basis(ModelSet::unit_circle(), 8);
  EXPECT_EQ(b.monic_value(0, Point(cplx(0.3, 0.1))), cplx(1.0, 0.0));
  EXPECT_NEAR(b.sup_norm(2), 2.0, 1e-12);
  const cplx z(0.2, 0.5);
  EXPECT_LT(std::abs(b.monic_value(2, Point(z)) - (z * z - 1.0)), 1e-14);
  const auto pts = leja_points(ModelSet::unit_circle(), 8);
  for (std::size_t j = 1; j < b.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) EXPECT_LT(std::abs(b.monic_value(j, Point(pts[i]))), 1e-12);
  }
}

TEST(L2Minimal, CircleAndInterval) {
  const Basis c = l2_basis(ModelSet::unit_circle(), 10);
  for (std::size_t j = 1; j < c.size(); ++j) EXPECT_NEAR(c.sup_norm(j), 1.0, 1e-10);
  const Basis i = l2_basis(ModelSet::interval(), 12);
  EXPECT_EQ(i.monic_value(0, Point(cplx(0.4, 0.0))), cplx(1.0, 0.0));
  for (int n = 1; n <= 12; ++n) {
    const double x = 0.37;
    const double tn = std::cos(n * std::acos(x)) * std::ldexp(1.0, 1 - n);
    EXPECT_NEAR(i.monic_value(static_cast<std::size_t>(n), Point(cplx(x, 0.0))).real(), tn, 1e-12);
  }
}

TEST(ChebyshevConstants, IntervalAndCircle) {
  const Basis b = minimax_basis(ModelSet::interval(), 40);
  const auto r = chebyshev_constants(b);
  for (const auto& rec : r.records) {
    if (rec.degree == 0) continue;
    EXPECT_GT(rec.tau, 0.0);
    EXPECT_NEAR(rec.tau, std::pow(2.0, (1.0 - rec.degree) / rec.degree), 1e-8);
  }
  EXPECT_NEAR(r.limit_estimate, 0.5, 0.02);
  for (const auto& rec : chebyshev_constants(minimax_basis(ModelSet::unit_circle(), 10)).records) {
    if (rec.degree > 0) EXPECT_NEAR(rec.tau, 1.0, 1e-8);
  }
}

TEST(ChebyshevConstants, CircleFamiliesNearOne) {
  for (BasisFamily f : {BasisFamily::kMinimax, BasisFamily::kL2}) {
    const Basis b = build_basis(ModelSet::unit_circle(), f, 64);
    for (std::size_t j = 21; j < b.size(); ++j) {
      const double tau = std::pow(b.sup_norm(j), 1.0 / static_cast<double>(j));
      EXPECT_GE(tau, 0.99);
      EXPECT_LE(tau, 1.01);
    }
  }
  // Leja norms on the circle grow subexponentially; the band is wider at these degrees.
  const Basis l = build_basis(ModelSet::unit_circle(), BasisFamily::kLeja, 64);
  for (std::size_t j = 21; j < l.size(); ++j) {
    const double tau = std::pow(l.sup_norm(j), 1.0 / static_cast<double>(j));
    EXPECT_GE(tau, 0.99);
    EXPECT_LE(tau, 1.13);
  }
}

TEST(ZAsymptotic, Diagnostics) {
  const auto dirs = default_directions(1);
  EXPECT_TRUE(verify_z_asymptotic(minimax_basis(ModelSet::interval(), 40), dirs, 0.01).all_pass());
  const auto leja = verify_z_asymptotic(leja_basis(ModelSet::unit_circle(), 160), dirs, 0.05);
  EXPECT_TRUE(leja.all_pass());
  EXPECT_NEAR(leja.directions[0].limit_estimate, 1.0, 0.05);
  try {
    verify_z_asymptotic(minimax_basis(ModelSet::interval(), 0), dirs, 0.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientData);
  }
}

TEST(BasisIo, RoundTripIsExact) {
  for (BasisFamily f : {BasisFamily::kMinimax, BasisFamily::kLeja}) {
    const Basis b = build_basis(ModelSet::interval(-0.5, 1.5), f, 12);
    const auto path = std::filesystem::temp_directory_path() / "chebzero_basis_roundtrip.json";
    write_basis(b, path);
    const Basis back = read_basis(path);
    EXPECT_EQ(basis_to_json(back), basis_to_json(b));
    for (std::size_t j = 0; j < b.size(); ++j) {
      EXPECT_EQ(back.monic_value(j, Point(cplx(0.3, 0.4))), b.monic_value(j, Point(cplx(0.3, 0.4))));
    }
    std::filesystem::remove(path);
  }
  try {
    read_basis("/nonexistent/basis.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMissingArtifact);
  }
}

TEST(ChebyshevReport, CsvHeader) {
  std::ostringstream out;
  chebyshev_constants(minimax_basis(ModelSet::interval(), 3)).write_csv(out);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "j,k_1,s,sup_norm,tau");
}
