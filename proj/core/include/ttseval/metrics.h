#ifndef TTSEVAL_METRICS_H_
#define TTSEVAL_METRICS_H_

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ttseval/alignment.h"

namespace ttseval {

enum class Aggregation { kPooled, kPerReportMedian, kPerReportMean };

// How the area under the log-time CDF is summed. kExactArea integrates the
// right-continuous empirical CDF. kDisplayedSum weights each interval
// (x_(i-1), x_(i)] by i/k, which overstates the area by x_(k) / (k L); it is
// kept only for comparison against numbers computed that way.
enum class AultcWeighting { kExactArea, kDisplayedSum };

struct MetricConfig {
  double s_max_hours = 8760.0;
  double cosine_cutoff = 0.1;
  Aggregation aggregation = Aggregation::kPerReportMedian;
  AultcWeighting aultc_weighting = AultcWeighting::kExactArea;

  static constexpr const char* kTimeUnit = "hours";
};

// Sorted log-discrepancies x_(i) = log(1 + min(|t_pred - t_ref|, S_max)).
class DiscrepancySeries {
 public:
  // Throws PreconditionError if empty, if s_max_hours <= 0, or if a value is
  // negative or NaN.
  static DiscrepancySeries from_abs_discrepancies(std::vector<double> hours,
                                                  double s_max_hours);
  static DiscrepancySeries from_pairs(std::span<const MatchedPair> pairs,
                                      double s_max_hours);

  std::size_t k() const { return x_sorted_.size(); }
  const std::vector<double>& x_sorted() const { return x_sorted_; }
  double s_max_hours() const { return s_max_hours_; }
  // log(1 + S_max), the right end of the integration range.
  double upper() const { return upper_; }

 private:
  DiscrepancySeries(std::vector<double> x, double s_max, double upper)
      : x_sorted_(std::move(x)), s_max_hours_(s_max), upper_(upper) {}

  std::vector<double> x_sorted_;
  double s_max_hours_;
  double upper_;
};

struct CdfPoint {
  double x = 0.0;
  double f = 0.0;

  friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

// |{pairs with distance <= cutoff}| / n_ref. Throws UndefinedMetric when
// n_ref is 0.
double event_match_rate(const AlignmentResult& alignment, double cutoff);

// Fraction of comparable pairs (distinct reference times) ordered the same
// way by the predicted times; tied predictions score 1/2. Throws
// UndefinedMetric when no pair is comparable. O(n log n).
double concordance(std::span<const double> t_ref,
                   std::span<const double> t_pred);
double concordance(std::span<const MatchedPair> pairs);

// Median of |t_pred - t_ref|; mean of the middle two for even counts.
double median_abs_error(std::span<const MatchedPair> pairs);

// Median of arbitrary values, same even-count rule. Throws UndefinedMetric
// when empty.
double median(std::vector<double> values);

// Linear interpolation at position (n - 1) p of the sorted values.
double quantile(std::vector<double> values, double p);

// Right-continuous empirical CDF as (distinct x, fraction <= x) points.
std::vector<CdfPoint> log_time_cdf(const DiscrepancySeries& series);

// Area under the log-time CDF over [0, log(1 + S_max)], normalized to [0, 1].
double aultc(const DiscrepancySeries& series,
             AultcWeighting weighting = AultcWeighting::kExactArea);

// (1/k) sum log(1 + min(|t_pred_i - t_ref_i|, S_max)).
double avg_log_discrepancy(std::span<const double> t_pred,
                           std::span<const double> t_ref, double s_max_hours);

// Discrepancy CDFs split by |t_ref|: [0,1], (1,24], (24,8760], (8760,inf).
struct BucketCdf {
  std::string label;
  double lower_hours = 0.0;  // exclusive, except the first bucket
  double upper_hours = 0.0;  // inclusive
  std::size_t count = 0;
  std::vector<CdfPoint> points;  // empty when the bucket is empty
};

std::vector<BucketCdf> bucketed_discrepancy_cdfs(
    std::span<const MatchedPair> pairs, const MetricConfig& config);

}  // namespace ttseval

#endif  // TTSEVAL_METRICS_H_
