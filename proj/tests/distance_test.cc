#include "ttseval/distance.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "oracles.h"
#include "ttseval/errors.h"

namespace ttseval {
namespace {

TEST(Levenshtein, Examples) {
  EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(levenshtein("", ""), 0u);
  EXPECT_EQ(levenshtein("fever", ""), 5u);
  EXPECT_EQ(levenshtein("fever", "fever"), 0u);
  EXPECT_EQ(levenshtein("fever", "fever persisted"), 10u);
}

TEST(Levenshtein, CountsCodePointsNotBytes) {
  EXPECT_EQ(levenshtein("café", "cafe"), 1u);
  EXPECT_EQ(levenshtein("→", "->"), 2u);
  EXPECT_DOUBLE_EQ(normalized_levenshtein("naïve", "naive"), 0.2);
}

TEST(NormalizedLevenshtein, Examples) {
  EXPECT_DOUBLE_EQ(normalized_levenshtein("kitten", "sitting"), 3.0 / 7.0);
  EXPECT_EQ(normalized_levenshtein("", ""), 0.0);
  EXPECT_EQ(normalized_levenshtein("a", ""), 1.0);
}

TEST(LevenshteinProperty, MatchesFullMatrixAndIsAMetric) {
  std::mt19937_64 rng(23);
  auto word = [&] {
    std::string s;
    for (int i = static_cast<int>(rng() % 12); i > 0; --i) {
      s += static_cast<char>('a' + rng() % 4);
    }
    return s;
  };
  for (int trial = 0; trial < 2000; ++trial) {
    std::string a = word(), b = word(), c = word();
    std::size_t ab = levenshtein(a, b);
    EXPECT_EQ(ab, oracle::edit_distance(a, b)) << a << " / " << b;
    EXPECT_EQ(ab, levenshtein(b, a));
    EXPECT_LE(levenshtein(a, c), ab + levenshtein(b, c));
    EXPECT_EQ(ab == 0, a == b);
    double n = normalized_levenshtein(a, b);
    EXPECT_GE(n, 0.0);
    EXPECT_LE(n, 1.0);
  }
}

TEST(CosineDistance, Examples) {
  std::vector<double> x{1, 0}, y{0, 1}, z{-1, 0}, w{2, 0};
  EXPECT_DOUBLE_EQ(cosine_distance(x, y), 1.0);
  EXPECT_DOUBLE_EQ(cosine_distance(x, z), 2.0);
  EXPECT_DOUBLE_EQ(cosine_distance(x, w), 0.0);
  std::vector<double> zero{0, 0};
  EXPECT_THROW(cosine_distance(x, zero), ZeroVector);
  std::vector<double> three{1, 0, 0};
  EXPECT_THROW(cosine_distance(x, three), PreconditionError);
}

TEST(CosineDistanceProperty, RangeSymmetryScaleInvariance) {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> u(8), v(8), su(8);
    double scale = 0.1 + std::abs(g(rng)) * 10;
    for (int i = 0; i < 8; ++i) {
      u[i] = g(rng);
      v[i] = g(rng);
      su[i] = u[i] * scale;
    }
    double d = cosine_distance(u, v);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 2.0);
    EXPECT_DOUBLE_EQ(d, cosine_distance(v, u));
    EXPECT_NEAR(cosine_distance(su, v), d, 1e-12);
    EXPECT_NEAR(cosine_distance(u, su), 0.0, 1e-12);
  }
}

}  // namespace
}  // namespace ttseval
