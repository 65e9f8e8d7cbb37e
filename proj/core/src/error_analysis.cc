#include "ttseval/error_analysis.h"

#include <algorithm>
#include <cmath>

#include "ttseval/errors.h"
#include "ttseval/metrics.h"

namespace ttseval {

double adjusted_match_rate(const AlignmentResult& alignment, double cutoff) {
  if (alignment.pairs.empty()) {
    throw UndefinedMetric("adjusted match rate undefined without pairs");
  }
  auto matched = std::count_if(
      alignment.pairs.begin(), alignment.pairs.end(),
      [cutoff](const MatchedPair& p) { return p.distance <= cutoff; });
  return static_cast<double>(matched) /
         static_cast<double>(alignment.pairs.size());
}

IdentificationCounts identification_counts(const AlignmentResult& alignment) {
  return {alignment.unmatched_ref.size(), alignment.unmatched_pred.size()};
}

IqrFilterResult iqr_filter(std::span<const MatchedPair> pairs) {
  IqrFilterResult result;
  if (pairs.size() < 4) {
    result.pairs.assign(pairs.begin(), pairs.end());
    result.warning = "fewer than 4 pairs; IQR filter not applied";
    return result;
  }
  std::vector<double> diffs;
  diffs.reserve(pairs.size());
  for (const auto& p : pairs) diffs.push_back(p.t_pred - p.t_ref);
  result.q1 = quantile(diffs, 0.25);
  result.q3 = quantile(diffs, 0.75);
  double iqr = result.q3 - result.q1;
  result.lower_fence = result.q1 - 1.5 * iqr;
  result.upper_fence = result.q3 + 1.5 * iqr;
  for (const auto& p : pairs) {
    double d = p.t_pred - p.t_ref;
    if (d >= result.lower_fence && d <= result.upper_fence) {
      result.pairs.push_back(p);
    }
  }
  return result;
}

MeanSd mean_sd(std::span<const double> values) {
  if (values.empty()) throw UndefinedMetric("mean of an empty set");
  double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / n)};
}

MeanSd category_alignment_rate(
    const std::vector<std::vector<CategoryPair>>& reports) {
  std::vector<double> rates;
  for (const auto& report : reports) {
    if (report.empty()) continue;
    auto same = std::count_if(
        report.begin(), report.end(),
        [](const CategoryPair& p) { return p.first == p.second; });
    rates.push_back(static_cast<double>(same) /
                    static_cast<double>(report.size()));
  }
  if (rates.empty()) throw UndefinedMetric("no categorized pairs");
  return mean_sd(rates);
}

std::map<int, MeanSd> per_category_match_rate(
    const std::vector<CategorizedAlignment>& reports, double cutoff) {
  std::map<int, std::vector<double>> rates;
  for (const auto& report : reports) {
    if (report.ref_categories.size() != report.alignment.n_ref) {
      throw PreconditionError("one category per reference finding required");
    }
    std::map<int, std::size_t> totals;
    std::map<int, std::size_t> hits;
    for (const auto& category : report.ref_categories) {
      ++totals[category.value()];
    }
    for (const auto& pair : report.alignment.pairs) {
      if (pair.distance <= cutoff) {
        ++hits[report.ref_categories.at(pair.ref_index).value()];
      }
    }
    for (const auto& [category, total] : totals) {
      rates[category].push_back(static_cast<double>(hits[category]) /
                                static_cast<double>(total));
    }
  }
  std::map<int, MeanSd> out;
  for (const auto& [category, values] : rates) out[category] = mean_sd(values);
  return out;
}

}  // namespace ttseval
