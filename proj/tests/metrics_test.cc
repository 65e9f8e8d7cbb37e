#include "ttseval/metrics.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "oracles.h"
#include "ttseval/errors.h"

namespace ttseval {
namespace {

AlignmentResult alignment(std::size_t n_ref, std::vector<double> distances) {
  AlignmentResult r;
  r.n_ref = n_ref;
  r.n_pred = distances.size();
  for (std::size_t i = 0; i < distances.size(); ++i) {
    r.pairs.push_back({i, i, distances[i], 0.0, 0.0});
  }
  return r;
}

std::vector<MatchedPair> pairs_from(const std::vector<double>& t_ref,
                                    const std::vector<double>& t_pred) {
  std::vector<MatchedPair> out;
  for (std::size_t i = 0; i < t_ref.size(); ++i) {
    out.push_back({i, i, 0.0, t_ref[i], t_pred[i]});
  }
  return out;
}

DiscrepancySeries series(std::vector<double> hours, double s_max = 8760) {
  return DiscrepancySeries::from_abs_discrepancies(std::move(hours), s_max);
}

TEST(EventMatchRate, Examples) {
  EXPECT_EQ(event_match_rate(alignment(3, {0, 0, 0}), 0.1), 1.0);
  EXPECT_DOUBLE_EQ(event_match_rate(alignment(3, {0, 0.05, 0.5}), 0.1),
                   2.0 / 3.0);
  EXPECT_EQ(event_match_rate(alignment(2, {}), 0.1), 0.0);
  EXPECT_EQ(event_match_rate(alignment(1, {0.1}), 0.1), 1.0);
  EXPECT_THROW(event_match_rate(alignment(0, {}), 0.1), UndefinedMetric);
}

TEST(Concordance, Examples) {
  std::vector<double> ref{0, 1, 2};
  EXPECT_EQ(concordance(ref, std::vector<double>{0, 1, 2}), 1.0);
  EXPECT_EQ(concordance(ref, std::vector<double>{2, 1, 0}), 0.0);
  EXPECT_DOUBLE_EQ(concordance(ref, std::vector<double>{0, 2, 1}), 2.0 / 3.0);
  EXPECT_EQ(concordance(ref, std::vector<double>{5, 5, 5}), 0.5);
  EXPECT_THROW(
      concordance(std::vector<double>{1, 1}, std::vector<double>{0, 1}),
      UndefinedMetric);
  EXPECT_THROW(concordance(std::vector<double>{1}, std::vector<double>{1}),
               UndefinedMetric);
  EXPECT_THROW(concordance(ref, std::vector<double>{0, 1}), PreconditionError);
  EXPECT_EQ(concordance(pairs_from({0, 1, 2}, {0, 1, 2})), 1.0);
}

TEST(ConcordanceProperty, MatchesBruteForce) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = 2 + rng() % 40;
    std::vector<double> ref(n), pred(n);
    for (std::size_t i = 0; i < n; ++i) {
      ref[i] = static_cast<double>(rng() % 6) * 24.0 - 48.0;
      pred[i] = static_cast<double>(rng() % 6) * 24.0 - 48.0;
    }
    double expected = oracle::concordance(ref, pred);
    if (expected < 0) {
      EXPECT_THROW(concordance(ref, pred), UndefinedMetric);
    } else {
      EXPECT_NEAR(concordance(ref, pred), expected, 1e-12);
    }
  }
}

// Strictly increasing transforms of the predictions leave the ordering,
// and therefore the c-index, unchanged.
TEST(ConcordanceProperty, InvariantUnderMonotoneTransform) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 3 + rng() % 20;
    std::vector<double> ref(n), pred(n), warped(n);
    for (std::size_t i = 0; i < n; ++i) {
      ref[i] = static_cast<double>(i);
      pred[i] = static_cast<double>(rng() % 10);
      warped[i] = std::exp(pred[i] / 3.0) - 7.0;
    }
    EXPECT_DOUBLE_EQ(concordance(ref, pred), concordance(ref, warped));
  }
}

TEST(MedianAbsError, Examples) {
  EXPECT_EQ(median_abs_error(pairs_from({0, 0, 0}, {0, 24, -1000})), 24.0);
  EXPECT_EQ(median_abs_error(pairs_from({5}, {5})), 0.0);
  EXPECT_EQ(median_abs_error(pairs_from({0, 0}, {12, 36})), 24.0);
  EXPECT_THROW(median_abs_error({}), UndefinedMetric);
}

TEST(Quantile, InterpolatesAtNMinusOneP) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(1 + rng() % 15);
    for (double& x : v) x = static_cast<double>(rng() % 100);
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      EXPECT_NEAR(quantile(v, p), oracle::interpolated_quantile(v, p), 1e-12);
    }
  }
  EXPECT_EQ(quantile({1, 2, 3, 4, 100}, 0.25), 2.0);
  EXPECT_EQ(quantile({1, 2, 3, 4, 100}, 0.75), 4.0);
  EXPECT_THROW(quantile({}, 0.5), UndefinedMetric);
  EXPECT_THROW(quantile({1}, 1.5), PreconditionError);
}

TEST(DiscrepancySeries, TruncatesAndSorts) {
  auto s = series({10000, 0, 23}, 8760);
  EXPECT_EQ(s.k(), 3u);
  EXPECT_EQ(s.x_sorted()[0], 0.0);
  EXPECT_DOUBLE_EQ(s.x_sorted()[1], std::log(24.0));
  EXPECT_DOUBLE_EQ(s.x_sorted()[2], std::log(8761.0));
  EXPECT_DOUBLE_EQ(s.upper(), std::log(8761.0));
  EXPECT_THROW(series({}), PreconditionError);
  EXPECT_THROW(series({1}, 0), PreconditionError);
  EXPECT_THROW(series({-1}), PreconditionError);
  EXPECT_THROW(series({std::nan("")}), PreconditionError);
}

TEST(LogTimeCdf, Examples) {
  EXPECT_EQ(log_time_cdf(series({0})), (std::vector<CdfPoint>{{0, 1.0}}));
  EXPECT_EQ(log_time_cdf(series({0, 8760})),
            (std::vector<CdfPoint>{{0, 0.5}, {std::log1p(8760.0), 1.0}}));
  double a = std::log1p(5.0);
  EXPECT_EQ(log_time_cdf(series({5, 0, 0, 5})),
            (std::vector<CdfPoint>{{0, 0.5}, {a, 1.0}}));
}

TEST(Aultc, Examples) {
  EXPECT_EQ(aultc(series({0, 0, 0})), 1.0);
  EXPECT_EQ(aultc(series({8760, 9000, 1e9})), 0.0);
  EXPECT_DOUBLE_EQ(aultc(series({0, 8760})), 0.5);
  EXPECT_NEAR(aultc(series({23})), 1.0 - std::log(24.0) / std::log(8761.0),
              1e-15);
  EXPECT_NEAR(aultc(series({23})), 0.6499, 5e-5);
}

TEST(AultcProperty, MatchesNumericIntegration) {
  std::mt19937_64 rng(59);
  std::exponential_distribution<double> hours(1.0 / 200.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> h(1 + rng() % 30);
    for (double& x : h) x = rng() % 5 == 0 ? 0.0 : std::floor(hours(rng));
    EXPECT_NEAR(aultc(series(h)), oracle::aultc(h, 8760), 1e-9);
  }
}

// Larger discrepancies never raise the area, and a larger S_max never
// lowers it for a fixed sample.
TEST(AultcProperty, Monotonicity) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> h(1 + rng() % 10);
    for (double& x : h) x = static_cast<double>(rng() % 20000);
    double base = aultc(series(h));
    EXPECT_GE(base, 0.0);
    EXPECT_LE(base, 1.0);
    std::vector<double> worse = h;
    worse[rng() % worse.size()] += static_cast<double>(rng() % 500);
    EXPECT_LE(aultc(series(worse)), base + 1e-15);
    std::vector<double> shuffled = h;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(aultc(series(shuffled)), base);
  }
}

TEST(Aultc, DisplayedSumOverstatesByLastStep) {
  for (const auto& h :
       std::vector<std::vector<double>>{{23}, {0, 5, 100}, {1, 1, 8760}}) {
    auto s = series(h);
    double exact = aultc(s, AultcWeighting::kExactArea);
    double shown = aultc(s, AultcWeighting::kDisplayedSum);
    double gap = s.x_sorted().back() / (static_cast<double>(s.k()) * s.upper());
    EXPECT_NEAR(shown - exact, gap, 1e-12);
  }
  EXPECT_EQ(aultc(series({0, 0}), AultcWeighting::kDisplayedSum), 1.0);
}

TEST(AvgLogDiscrepancy, NonConvexityWitness) {
  std::vector<double> ref{0};
  EXPECT_EQ(
      avg_log_discrepancy(std::vector<double>{7}, std::vector<double>{7}, 2),
      0.0);
  double at3 = avg_log_discrepancy(std::vector<double>{3}, ref, 2);
  double at15 = avg_log_discrepancy(std::vector<double>{1.5}, ref, 2);
  EXPECT_DOUBLE_EQ(at3, std::log(3.0));
  EXPECT_DOUBLE_EQ(at15, std::log(2.5));
  EXPECT_GT(at15, 0.5 * at3);
  EXPECT_THROW(avg_log_discrepancy(std::vector<double>{1, 2}, ref, 2),
               PreconditionError);
}

TEST(BucketedCdfs, EdgesAndEmptyBuckets) {
  MetricConfig config;
  auto buckets =
      bucketed_discrepancy_cdfs(pairs_from({0, 1, 1.5, 12, 24, 25, -8760, 8761},
                                           {0, 0, 0, 12, 0, 0, 0, 0}),
                                config);
  ASSERT_EQ(buckets.size(), 4u);
  EXPECT_EQ(buckets[0].label, "0-1h");
  EXPECT_EQ(buckets[0].count, 2u);
  EXPECT_EQ(buckets[1].count, 3u);
  EXPECT_EQ(buckets[2].count, 2u);
  EXPECT_EQ(buckets[3].count, 1u);
  EXPECT_EQ(buckets[3].label, "8760h+");

  auto only_small = bucketed_discrepancy_cdfs(pairs_from({0}, {3}), config);
  EXPECT_EQ(only_small[0].points.size(), 1u);
  EXPECT_TRUE(only_small[3].points.empty());
  EXPECT_EQ(only_small[3].count, 0u);
  EXPECT_THROW(bucketed_discrepancy_cdfs({}, config), PreconditionError);
}

TEST(Median, EvenAndOdd) {
  EXPECT_EQ(median({3, 1, 2}), 2.0);
  EXPECT_EQ(median({4, 1, 2, 3}), 2.5);
  EXPECT_THROW(median({}), UndefinedMetric);
}

}  // namespace
}  // namespace ttseval
