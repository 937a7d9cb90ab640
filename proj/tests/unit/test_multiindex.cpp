#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "chebzero/error.hpp"
#include "chebzero/multiindex.hpp"

using namespace chebzero;

TEST(Enumerate, SingleVariableIsDegreeOrder) {
  const auto t = enumerate(1, 3);
  ASSERT_EQ(t.size(), 4u);
  for (int j = 0; j < 4; ++j) EXPECT_EQ(t[static_cast<std::size_t>(j)].entries(), std::vector<int>{j});
}

TEST(Enumerate, TwoVariablesDegreeOne) {
  const auto t = enumerate(2, 1);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0].entries(), (std::vector<int>{0, 0}));
  EXPECT_EQ(t[1].entries(), (std::vector<int>{1, 0}));
  EXPECT_EQ(t[2].entries(), (std::vector<int>{0, 1}));
}

TEST(Enumerate, TwoVariablesDegreeTwoMatchesBruteForce) {
  const auto t = enumerate(2, 2);
  ASSERT_EQ(t.size(), 6u);
  // Brute force: all pairs with sum <= 2, sorted by degree then descending lex.
  std::vector<std::vector<int>> all;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b) all.push_back({a, b});
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    const int dx = x[0] + x[1], dy = y[0] + y[1];
    return dx != dy ? dx < dy : x > y;
  });
  for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(t[j].entries(), all[j]);
}

TEST(Dimension, Values) {
  EXPECT_EQ(dimension(1, 7), 8);
  EXPECT_EQ(dimension(2, 2), 6);
  EXPECT_EQ(dimension(2, 10), 66);
  EXPECT_EQ(dimension(2, 512), 131841);
}

TEST(Dimension, OverflowIsReported) {
  try {
    dimension(40, 40);
    FAIL() << "expected overflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kOverflow);
  }
}

TEST(Direction, Examples) {
  EXPECT_EQ(direction(MultiIndex({2, 2})).theta, (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(direction(MultiIndex({3, 0})).theta, (std::vector<double>{1.0, 0.0}));
  const auto d = direction(MultiIndex({1, 4}));
  EXPECT_NEAR(d.theta[0], 0.2, 1e-15);
  EXPECT_NEAR(d.theta[1], 0.8, 1e-15);
}

TEST(Direction, ZeroIndexIsDegenerate) {
  try {
    direction(MultiIndex({0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateInput);
  }
}

TEST(MultiIndexTable, PrefixLengthAndInjectivity) {
  for (int m = 1; m <= 2; ++m) {
    for (int n = 0; n < 64; ++n) {
      const auto a = enumerate(m, n), b = enumerate(m, n + 1);
      ASSERT_EQ(static_cast<std::int64_t>(a.size()), dimension(m, n));
      for (std::size_t j = 0; j < a.size(); ++j) ASSERT_EQ(a[j], b[j]);
    }
    const auto t = enumerate(m, 64);
    std::set<std::vector<int>> seen;
    for (std::size_t j = 0; j < t.size(); ++j) {
      EXPECT_TRUE(seen.insert(t[j].entries()).second);
      if (j > 0) EXPECT_LE(t.degree_at(j - 1), t.degree_at(j));
      if (t.degree_at(j) > 0) {
        const auto d = direction(t[j]);
        double s = 0.0;
        for (double x : d.theta) {
          EXPECT_GE(x, 0.0);
          s += x;
        }
        EXPECT_NEAR(s, 1.0, 1e-12);
      }
    }
    EXPECT_EQ(t[0].degree(), 0);
  }
}

TEST(MultiIndexTable, PositionAndCsv) {
  const auto t = enumerate(2, 3);
  EXPECT_EQ(t.position(MultiIndex({1, 1})), 4);
  EXPECT_EQ(t.position(MultiIndex({4, 0})), -1);
  std::ostringstream out;
  t.write_csv(out);
  const std::string csv = out.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "j,k_1,k_2,s");
  EXPECT_NE(csv.find("\n5,1,1,2\n"), std::string::npos);
}
