#include "ttseval/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "ttseval/errors.h"

namespace ttseval {
namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double value) {
    double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

class FenwickTree {
 public:
  explicit FenwickTree(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t index) {
    for (std::size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) {
      ++tree_[i];
    }
  }
  // Number of inserted indices < `index`.
  std::uint64_t prefix(std::size_t index) const {
    std::uint64_t total = 0;
    for (std::size_t i = index; i > 0; i -= i & (~i + 1)) total += tree_[i];
    return total;
  }

 private:
  std::vector<std::uint64_t> tree_;
};

}  // namespace

DiscrepancySeries DiscrepancySeries::from_abs_discrepancies(
    std::vector<double> hours, double s_max_hours) {
  if (!(s_max_hours > 0.0) || !std::isfinite(s_max_hours)) {
    throw PreconditionError("S_max must be positive and finite");
  }
  if (hours.empty()) throw PreconditionError("discrepancy series is empty");
  const double upper = std::log1p(s_max_hours);
  for (double& h : hours) {
    if (std::isnan(h) || h < 0.0) {
      throw PreconditionError("discrepancies must be non-negative");
    }
    h = h >= s_max_hours ? upper : std::log1p(h);
  }
  std::sort(hours.begin(), hours.end());
  return DiscrepancySeries(std::move(hours), s_max_hours, upper);
}

DiscrepancySeries DiscrepancySeries::from_pairs(
    std::span<const MatchedPair> pairs, double s_max_hours) {
  std::vector<double> hours;
  hours.reserve(pairs.size());
  for (const auto& p : pairs) hours.push_back(std::abs(p.t_pred - p.t_ref));
  return from_abs_discrepancies(std::move(hours), s_max_hours);
}

double event_match_rate(const AlignmentResult& alignment, double cutoff) {
  if (alignment.n_ref == 0) {
    throw UndefinedMetric("match rate undefined without reference findings");
  }
  auto matched = std::count_if(
      alignment.pairs.begin(), alignment.pairs.end(),
      [cutoff](const MatchedPair& p) { return p.distance <= cutoff; });
  return static_cast<double>(matched) / static_cast<double>(alignment.n_ref);
}

double concordance(std::span<const double> t_ref,
                   std::span<const double> t_pred) {
  if (t_ref.size() != t_pred.size()) {
    throw PreconditionError("concordance: length mismatch");
  }
  const std::size_t n = t_ref.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(t_ref[i]) || std::isnan(t_pred[i])) {
      throw PreconditionError("concordance: NaN time");
    }
  }

  // Dense ranks of the predicted times.
  std::vector<double> levels(t_pred.begin(), t_pred.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    rank[i] = static_cast<std::size_t>(
        std::lower_bound(levels.begin(), levels.end(), t_pred[i]) -
        levels.begin());
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return t_ref[a] < t_ref[b]; });

  // Sweep reference-time groups in ascending order; everything already in
  // the tree has a strictly smaller reference time.
  FenwickTree tree(levels.size());
  std::uint64_t inserted = 0;
  std::uint64_t concordant = 0;
  std::uint64_t tied = 0;
  std::uint64_t comparable = 0;
  std::size_t start = 0;
  while (start < n) {
    std::size_t stop = start;
    while (stop < n && t_ref[order[stop]] == t_ref[order[start]]) ++stop;
    for (std::size_t k = start; k < stop; ++k) {
      std::size_t r = rank[order[k]];
      std::uint64_t below = tree.prefix(r);
      std::uint64_t equal = tree.prefix(r + 1) - below;
      concordant += below;
      tied += equal;
      comparable += inserted;
    }
    for (std::size_t k = start; k < stop; ++k) tree.add(rank[order[k]]);
    inserted += stop - start;
    start = stop;
  }
  if (comparable == 0) {
    throw UndefinedMetric("concordance undefined: no comparable pairs");
  }
  return (static_cast<double>(concordant) + 0.5 * static_cast<double>(tied)) /
         static_cast<double>(comparable);
}

double concordance(std::span<const MatchedPair> pairs) {
  std::vector<double> t_ref, t_pred;
  t_ref.reserve(pairs.size());
  t_pred.reserve(pairs.size());
  for (const auto& p : pairs) {
    t_ref.push_back(p.t_ref);
    t_pred.push_back(p.t_pred);
  }
  return concordance(t_ref, t_pred);
}

double median(std::vector<double> values) {
  if (values.empty()) throw UndefinedMetric("median of an empty set");
  std::sort(values.begin(), values.end());
  std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

double median_abs_error(std::span<const MatchedPair> pairs) {
  std::vector<double> errors;
  errors.reserve(pairs.size());
  for (const auto& p : pairs) errors.push_back(std::abs(p.t_pred - p.t_ref));
  return median(std::move(errors));
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw UndefinedMetric("quantile of an empty set");
  if (p < 0.0 || p > 1.0) throw PreconditionError("quantile outside [0, 1]");
  std::sort(values.begin(), values.end());
  double position = static_cast<double>(values.size() - 1) * p;
  auto lo = static_cast<std::size_t>(std::floor(position));
  std::size_t hi = std::min(lo + 1, values.size() - 1);
  double fraction = position - static_cast<double>(lo);
  if (fraction == 0.0) return values[lo];
  return values[lo] + fraction * (values[hi] - values[lo]);
}

std::vector<CdfPoint> log_time_cdf(const DiscrepancySeries& series) {
  const auto& x = series.x_sorted();
  const double k = static_cast<double>(x.size());
  std::vector<CdfPoint> points;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i + 1 < x.size() && x[i + 1] == x[i]) continue;
    points.push_back({x[i], static_cast<double>(i + 1) / k});
  }
  return points;
}

double aultc(const DiscrepancySeries& series, AultcWeighting weighting) {
  const auto& x = series.x_sorted();
  const double upper = series.upper();
  const double k = static_cast<double>(x.size());
  if (weighting == AultcWeighting::kExactArea) {
    // Mean of (L - x_i) / L; each term is exactly 1 at x_i = 0 and exactly
    // 0 at x_i = L, so both boundary values come out exact.
    CompensatedSum sum;
    for (double xi : x) sum.add(1.0 - xi / upper);
    return sum.value() / k;
  }
  CompensatedSum area;
  double previous = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    area.add((x[i] - previous) * static_cast<double>(i + 1) / k);
    previous = x[i];
  }
  area.add(upper - x.back());
  return area.value() / upper;
}

double avg_log_discrepancy(std::span<const double> t_pred,
                           std::span<const double> t_ref, double s_max_hours) {
  if (t_pred.size() != t_ref.size()) {
    throw PreconditionError("avg_log_discrepancy: length mismatch");
  }
  if (t_pred.empty()) throw PreconditionError("avg_log_discrepancy: empty");
  CompensatedSum sum;
  for (std::size_t i = 0; i < t_pred.size(); ++i) {
    sum.add(std::log1p(std::min(std::abs(t_pred[i] - t_ref[i]), s_max_hours)));
  }
  return sum.value() / static_cast<double>(t_pred.size());
}

std::vector<BucketCdf> bucketed_discrepancy_cdfs(
    std::span<const MatchedPair> pairs, const MetricConfig& config) {
  if (pairs.empty()) throw PreconditionError("bucketed CDFs need >= 1 pair");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<BucketCdf> buckets = {
      {"0-1h", 0.0, 1.0, 0, {}},
      {"1-24h", 1.0, 24.0, 0, {}},
      {"24-8760h", 24.0, 8760.0, 0, {}},
      {"8760h+", 8760.0, kInf, 0, {}},
  };
  std::vector<std::vector<double>> members(buckets.size());
  for (const auto& p : pairs) {
    double magnitude = std::abs(p.t_ref);
    std::size_t b = 0;
    while (b + 1 < buckets.size() && magnitude > buckets[b].upper_hours) ++b;
    members[b].push_back(std::abs(p.t_pred - p.t_ref));
  }
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    buckets[b].count = members[b].size();
    if (members[b].empty()) continue;
    buckets[b].points = log_time_cdf(DiscrepancySeries::from_abs_discrepancies(
        std::move(members[b]), config.s_max_hours));
  }
  return buckets;
}

}  // namespace ttseval
