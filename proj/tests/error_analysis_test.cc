#include "ttseval/error_analysis.h"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "ttseval/errors.h"
#include "ttseval/metrics.h"

namespace ttseval {
namespace {

AlignmentResult alignment(std::size_t n_ref, std::vector<double> distances) {
  AlignmentResult r;
  r.n_ref = n_ref;
  r.n_pred = distances.size();
  for (std::size_t i = 0; i < distances.size(); ++i) {
    r.pairs.push_back({i, i, distances[i], 0.0, 0.0});
  }
  for (std::size_t i = distances.size(); i < n_ref; ++i)
    r.unmatched_ref.push_back(i);
  return r;
}

std::vector<MatchedPair> with_differences(const std::vector<double>& d) {
  std::vector<MatchedPair> out;
  for (std::size_t i = 0; i < d.size(); ++i)
    out.push_back({i, i, 0.0, 0.0, d[i]});
  return out;
}

std::vector<double> differences(const std::vector<MatchedPair>& pairs) {
  std::vector<double> out;
  for (const auto& p : pairs) out.push_back(p.t_pred - p.t_ref);
  return out;
}

TEST(AdjustedMatchRate, Examples) {
  auto a = alignment(4, {0, 0.05});
  EXPECT_EQ(adjusted_match_rate(a, 0.1), 1.0);
  EXPECT_EQ(event_match_rate(a, 0.1), 0.5);
  EXPECT_EQ(adjusted_match_rate(alignment(3, {0.5, 0.7}), 0.1), 0.0);
  EXPECT_THROW(adjusted_match_rate(alignment(3, {}), 0.1), UndefinedMetric);
}

TEST(AdjustedMatchRateProperty, NeverBelowRawAndMonotoneInCutoff) {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n_ref = 1 + rng() % 10;
    std::vector<double> d(1 + rng() % n_ref);
    for (double& x : d) x = u(rng);
    auto a = alignment(n_ref, d);
    double lo = u(rng), hi = lo + u(rng);
    EXPECT_GE(adjusted_match_rate(a, lo), event_match_rate(a, lo));
    EXPECT_LE(event_match_rate(a, lo), event_match_rate(a, hi));
    EXPECT_LE(adjusted_match_rate(a, lo), adjusted_match_rate(a, hi));
  }
}

TEST(IdentificationCounts, UnderAndOver) {
  AlignmentResult a = alignment(5, {0, 0});
  a.n_pred = 4;
  a.unmatched_pred = {2, 3};
  auto c = identification_counts(a);
  EXPECT_EQ(c.under_identified, 3u);
  EXPECT_EQ(c.over_identified, 2u);
}

TEST(IqrFilter, HandComputedFences) {
  auto none = iqr_filter(with_differences({1, 2, 3, 4}));
  EXPECT_EQ(differences(none.pairs), (std::vector<double>{1, 2, 3, 4}));
  EXPECT_FALSE(none.warning);

  auto zeros = iqr_filter(with_differences({0, 0, 0, 0, 10000}));
  EXPECT_EQ(differences(zeros.pairs), (std::vector<double>{0, 0, 0, 0}));
  EXPECT_EQ(zeros.lower_fence, 0.0);
  EXPECT_EQ(zeros.upper_fence, 0.0);

  auto tail = iqr_filter(with_differences({1, 2, 3, 4, 100}));
  EXPECT_EQ(differences(tail.pairs), (std::vector<double>{1, 2, 3, 4}));
  EXPECT_EQ(tail.q1, 2.0);
  EXPECT_EQ(tail.q3, 4.0);
  EXPECT_EQ(tail.upper_fence, 7.0);
  EXPECT_EQ(tail.lower_fence, -1.0);
}

TEST(IqrFilter, NegativeOutliersAndOrderPreserved) {
  auto r = iqr_filter(with_differences({3, -500, 1, 2, 4}));
  EXPECT_EQ(differences(r.pairs), (std::vector<double>{3, 1, 2, 4}));
}

TEST(IqrFilter, FewerThanFourPairsUnchangedWithWarning) {
  auto r = iqr_filter(with_differences({0, 1000, -1000}));
  EXPECT_EQ(r.pairs.size(), 3u);
  EXPECT_TRUE(r.warning);
}

// Filtering shrinks the sample, which moves the quartiles, so a second
// pass can find new outliers. Stable on the fixture sets above.
TEST(IqrFilter, SecondPassCanRemoveMore) {
  auto once = iqr_filter(with_differences({8, 13, 13, 20, 40}));
  EXPECT_EQ(differences(once.pairs), (std::vector<double>{8, 13, 13, 20}));
  auto twice = iqr_filter(once.pairs);
  EXPECT_EQ(twice.q1, 11.75);
  EXPECT_EQ(twice.q3, 14.75);
  EXPECT_EQ(differences(twice.pairs), (std::vector<double>{8, 13, 13}));
  for (const auto& d :
       {std::vector<double>{1, 2, 3, 4}, std::vector<double>{0, 0, 0, 0, 10000},
        std::vector<double>{1, 2, 3, 4, 100}}) {
    auto first = iqr_filter(with_differences(d));
    EXPECT_EQ(differences(iqr_filter(first.pairs).pairs),
              differences(first.pairs));
  }
}

TEST(IqrFilterProperty, KeptPairsLieWithinFences) {
  std::mt19937_64 rng(71);
  std::normal_distribution<double> g(0, 50);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> d(4 + rng() % 30);
    for (double& x : d) x = std::round(g(rng)) * (rng() % 10 == 0 ? 40 : 1);
    auto r = iqr_filter(with_differences(d));
    std::size_t inside = 0;
    for (double x : d) inside += (x >= r.lower_fence && x <= r.upper_fence);
    EXPECT_EQ(r.pairs.size(), inside);
    EXPECT_EQ(r.q1, quantile(d, 0.25));
    EXPECT_EQ(r.q3, quantile(d, 0.75));
  }
}

TEST(MeanSd, PopulationSd) {
  std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  auto r = mean_sd(v);
  EXPECT_EQ(r.mean, 5.0);
  EXPECT_EQ(r.sd, 2.0);
  EXPECT_THROW(mean_sd(std::vector<double>{}), UndefinedMetric);
}

CategoryPair cp(int a, int b) { return {CategoryLabel(a), CategoryLabel(b)}; }

TEST(CategoryAlignmentRate, Examples) {
  auto all = category_alignment_rate({{cp(1, 1), cp(2, 2)}});
  EXPECT_EQ(all.mean, 1.0);
  EXPECT_EQ(all.sd, 0.0);
  auto none = category_alignment_rate({{cp(1, 2), cp(3, 4)}});
  EXPECT_EQ(none.mean, 0.0);
  EXPECT_EQ(none.sd, 0.0);
  auto half =
      category_alignment_rate({{cp(1, 1), cp(0, 0), cp(1, 2), cp(5, 4)}});
  EXPECT_EQ(half.mean, 0.5);
  EXPECT_EQ(half.sd, 0.0);
  auto two = category_alignment_rate({{cp(1, 1)}, {}, {cp(1, 2)}});
  EXPECT_EQ(two.mean, 0.5);
  EXPECT_EQ(two.sd, 0.5);
  EXPECT_THROW(category_alignment_rate({{}, {}}), UndefinedMetric);
}

TEST(PerCategoryMatchRate, Examples) {
  // Report 1: two category-2 references, one matched within the cutoff.
  CategorizedAlignment r1{alignment(2, {0.0, 0.9}),
                          {CategoryLabel(2), CategoryLabel(2)}};
  // Report 2: one category-2 reference, matched.
  CategorizedAlignment r2{alignment(1, {0.05}), {CategoryLabel(2)}};
  auto rates = per_category_match_rate({r1, r2}, 0.1);
  ASSERT_EQ(rates.size(), 1u);
  EXPECT_EQ(rates.at(2).mean, 0.75);
  EXPECT_FALSE(rates.count(5));

  auto single = per_category_match_rate({r1}, 0.1);
  EXPECT_EQ(single.at(2).mean, event_match_rate(r1.alignment, 0.1));

  CategorizedAlignment mixed{
      alignment(3, {0.0, 0.0}),
      {CategoryLabel(0), CategoryLabel(1), CategoryLabel(1)}};
  auto m = per_category_match_rate({mixed}, 0.1);
  EXPECT_EQ(m.at(0).mean, 1.0);
  EXPECT_EQ(m.at(1).mean, 0.5);

  CategorizedAlignment bad{alignment(2, {0.0}), {CategoryLabel(0)}};
  EXPECT_THROW(per_category_match_rate({bad}, 0.1), PreconditionError);
}

}  // namespace
}  // namespace ttseval
